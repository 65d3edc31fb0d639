//! Homogeneous binary forms over a prime field and matrices of them.
//!
//! Forms carry a formal degree so that zero forms stay degree-compatible
//! under addition and multiplication. The gcd factors out monomial content,
//! dehomogenizes, runs univariate Euclid and rehomogenizes; it handles pure
//! powers of s and t correctly.

use crate::field::{FpMatrix, LinalgError, PrimeField};
use serde::Serialize;
use std::fmt;

/// Homogeneous form of fixed formal degree `coeffs.len() - 1`.
///
/// `coeffs[u]` is the coefficient of s^(e-u) t^u.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryForm {
    #[serde(skip)]
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl BinaryForm {
    pub fn from_coeffs(field: PrimeField, coeffs: Vec<u64>) -> Self {
        assert!(!coeffs.is_empty());
        let p = field.modulus();
        assert!(coeffs.iter().all(|&c| c < p));
        Self { field, coeffs }
    }

    pub fn zero(field: PrimeField, degree: usize) -> Self {
        Self {
            field,
            coeffs: vec![0; degree + 1],
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::from_coeffs(field, vec![c % field.modulus()])
    }

    pub fn random(field: PrimeField, degree: usize, rng: &mut impl rand::Rng) -> Self {
        let coeffs = (0..=degree).map(|_| field.sample(rng)).collect();
        Self { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, u: usize) -> u64 {
        self.coeffs[u]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.degree() == 0 && self.coeffs[0] != 0
    }

    /// Number of times t divides the form; the formal degree for zero forms.
    pub fn t_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|&c| c != 0)
            .unwrap_or(self.coeffs.len() - 1 + 1)
    }

    /// Number of times s divides the form.
    pub fn s_multiplicity(&self) -> usize {
        match self.coeffs.iter().rposition(|&c| c != 0) {
            Some(last) => self.degree() - last,
            None => self.degree() + 1,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in add");
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Self { field: f, coeffs }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut coeffs = vec![0u64; self.degree() + other.degree() + 1];
        for (u, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (v, &b) in other.coeffs.iter().enumerate() {
                coeffs[u + v] = f.add(coeffs[u + v], f.mul(a, b));
            }
        }
        Self { field: f, coeffs }
    }

    /// d/ds; a degree-0 form differentiates to the zero form of degree 0.
    pub fn derivative_s(&self) -> Self {
        let f = self.field;
        let e = self.degree();
        if e == 0 {
            return Self::zero(f, 0);
        }
        let coeffs = (0..e)
            .map(|u| f.mul(self.coeffs[u], f.reduce_i64((e - u) as i64)))
            .collect();
        Self { field: f, coeffs }
    }

    /// d/dt.
    pub fn derivative_t(&self) -> Self {
        let f = self.field;
        let e = self.degree();
        if e == 0 {
            return Self::zero(f, 0);
        }
        let coeffs = (0..e)
            .map(|u| f.mul(self.coeffs[u + 1], f.reduce_i64((u + 1) as i64)))
            .collect();
        Self { field: f, coeffs }
    }

    pub fn eval(&self, x0: u64, x1: u64) -> u64 {
        let f = self.field;
        let e = self.degree();
        // powers of x0 descending, x1 ascending
        let mut acc = 0u64;
        let mut pow1 = 1u64;
        let mut pows0 = vec![1u64; e + 1];
        for i in 1..=e {
            pows0[i] = f.mul(pows0[i - 1], x0);
        }
        for u in 0..=e {
            acc = f.add(acc, f.mul(self.coeffs[u], f.mul(pows0[e - u], pow1)));
            pow1 = f.mul(pow1, x1);
        }
        acc
    }

    /// Normalizes the leading (highest power of s) coefficient to 1.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|&&c| c != 0) {
            Some(&lead) => self.scale(self.field.inv(lead)),
            None => self.clone(),
        }
    }

    /// Monic gcd as forms; zero inputs are absorbed, gcd(0,0) is the zero
    /// form of degree 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let f = self.field;
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let tm = self.t_multiplicity().min(other.t_multiplicity());
        let sm = self.s_multiplicity().min(other.s_multiplicity());
        let pa = self.dehomogenized_core();
        let pb = other.dehomogenized_core();
        let h = poly_gcd(f, &pa, &pb);
        let hdeg = h.len() - 1;
        let mut coeffs = vec![0u64; sm + tm + hdeg + 1];
        coeffs[tm..=tm + hdeg].copy_from_slice(&h);
        Self { field: f, coeffs }.monic()
    }

    /// Strips monomial content and dehomogenizes at s = 1: the result is a
    /// univariate polynomial in x = t/s with nonzero constant term.
    fn dehomogenized_core(&self) -> Vec<u64> {
        let first = self.coeffs.iter().position(|&c| c != 0).expect("nonzero");
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
        self.coeffs[first..=last].to_vec()
    }

    /// Exact division: Some(q) with self = q * g, or None.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        let f = self.field;
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return self
                .degree()
                .checked_sub(g.degree())
                .map(|d| Self::zero(f, d));
        }
        if self.degree() < g.degree() {
            return None;
        }
        let (tm_f, sm_f) = (self.t_multiplicity(), self.s_multiplicity());
        let (tm_g, sm_g) = (g.t_multiplicity(), g.s_multiplicity());
        if tm_g > tm_f || sm_g > sm_f {
            return None;
        }
        let pa = self.dehomogenized_core();
        let pb = g.dehomogenized_core();
        let (q, r) = poly_div_rem(f, &pa, &pb);
        if r.iter().any(|&c| c != 0) {
            return None;
        }
        // reassemble: self = s^(sm_f) t^(tm_f) core_f, g likewise; quotient
        // carries the leftover monomial content
        let qdeg = q.len() - 1;
        let tm = tm_f - tm_g;
        let sm = sm_f - sm_g;
        let mut coeffs = vec![0u64; sm + tm + qdeg + 1];
        coeffs[tm..=tm + qdeg].copy_from_slice(&q);
        debug_assert_eq!(coeffs.len() - 1, self.degree() - g.degree());
        Some(Self { field: f, coeffs })
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.degree();
        let mut first = true;
        for (u, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(w, " + ")?;
            }
            first = false;
            if c != 1 || u == 0 && e == 0 {
                write!(w, "{c}")?;
            }
            let (ps, pt) = (e - u, u);
            if ps > 0 {
                write!(w, "s")?;
                if ps > 1 {
                    write!(w, "^{ps}")?;
                }
            }
            if pt > 0 {
                write!(w, "t")?;
                if pt > 1 {
                    write!(w, "^{pt}")?;
                }
            }
        }
        if first {
            write!(w, "0")?;
        }
        Ok(())
    }
}

/// Univariate division with remainder over F_p; little-endian coefficients.
fn poly_div_rem(f: PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let bdeg = b.iter().rposition(|&c| c != 0).expect("division by zero");
    let lead_inv = f.inv(b[bdeg]);
    let mut rem = a.to_vec();
    if rem.len() < bdeg + 1 {
        return (vec![0], rem);
    }
    let qlen = rem.len() - bdeg;
    let mut q = vec![0u64; qlen];
    for i in (0..qlen).rev() {
        let coeff = f.mul(rem[i + bdeg], lead_inv);
        if coeff == 0 {
            continue;
        }
        q[i] = coeff;
        for (j, &bc) in b.iter().enumerate().take(bdeg + 1) {
            rem[i + j] = f.sub(rem[i + j], f.mul(coeff, bc));
        }
    }
    rem.truncate(bdeg.max(1));
    (q, rem)
}

/// Monic univariate gcd over F_p.
fn poly_gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let trim = |v: &[u64]| -> Vec<u64> {
        match v.iter().rposition(|&c| c != 0) {
            Some(last) => v[..=last].to_vec(),
            None => vec![0],
        }
    };
    let mut x = trim(a);
    let mut y = trim(b);
    while !(y.len() == 1 && y[0] == 0) {
        let (_, r) = poly_div_rem(f, &x, &y);
        x = y;
        y = trim(&r);
    }
    let lead = *x.last().unwrap();
    if lead != 0 && lead != 1 {
        let inv = f.inv(lead);
        for c in &mut x {
            *c = f.mul(*c, inv);
        }
    }
    x
}

/// Matrix of binary forms; column j is homogeneous of one degree in the
/// charts this crate builds, which keeps determinants homogeneous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BinaryForm>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BinaryForm) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BinaryForm {
        &self.entries[i * self.cols + j]
    }

    pub fn eval(&self, field: PrimeField, x0: u64, x1: u64) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).eval(x0, x1));
            }
        }
        m
    }

    pub fn delete_row(&self, row: usize) -> Self {
        assert!(row < self.rows);
        let mut entries = Vec::with_capacity((self.rows - 1) * self.cols);
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows - 1,
            cols: self.cols,
            entries,
        }
    }

    /// Determinant of the square submatrix on `rows` x `cols` (index lists),
    /// by expansion along the first listed column.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BinaryForm {
        assert_eq!(rows.len(), cols.len());
        let field = self.get(0, 0).field();
        let k = rows.len();
        if k == 0 {
            return BinaryForm::constant(field, 1);
        }
        if k == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let degree: usize = cols.iter().map(|&j| self.column_degree(j)).sum();
        let mut acc = BinaryForm::zero(field, degree);
        let rest: Vec<usize> = cols[1..].to_vec();
        for (pos, &i) in rows.iter().enumerate() {
            let entry = self.get(i, cols[0]);
            if entry.is_zero() {
                continue;
            }
            let sub_rows: Vec<usize> = rows
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != pos)
                .map(|(_, &r)| r)
                .collect();
            let term = entry.mul(&self.minor(&sub_rows, &rest));
            let term = if pos % 2 == 0 {
                term
            } else {
                term.scale(field.neg(1))
            };
            acc = acc.add(&term);
        }
        acc
    }

    fn column_degree(&self, j: usize) -> usize {
        (0..self.rows)
            .map(|i| self.get(i, j).degree())
            .max()
            .unwrap_or(0)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Gcd of all k x k minors, with early exit once the gcd is a nonzero
/// constant. Fiberwise injectivity of a chart is exactly `minors_gcd` being
/// a nonzero constant for k equal to the number of columns.
pub fn minors_gcd(m: &PolyMatrix, k: usize) -> Result<BinaryForm, LinalgError> {
    assert!(k >= 1 && k <= m.rows().min(m.cols()));
    let field = m.get(0, 0).field();
    let mut acc: Option<BinaryForm> = None;
    for cols in combinations(m.cols(), k) {
        for rows in combinations(m.rows(), k) {
            let det = m.minor(&rows, &cols);
            if det.is_zero() {
                continue;
            }
            acc = Some(match acc {
                None => det.monic(),
                Some(g) => g.gcd(&det),
            });
            if let Some(g) = &acc {
                if g.is_nonzero_constant() {
                    return Ok(g.clone());
                }
            }
        }
    }
    acc.ok_or(LinalgError::AllMinorsZero { k })
}
