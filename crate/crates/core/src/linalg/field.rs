use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rat;

/// The coefficient field: the rationals or a prime field F_p with p odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// F_p for an odd prime `p`.
    pub fn prime(p: u64) -> Option<Self> {
        (p > 2 && is_prime(p)).then_some(FieldSpec::Prime(p))
    }

    /// Canonical representative: unchanged over Q, the residue in 0..p over F_p.
    ///
    /// Panics if the denominator is divisible by p.
    pub fn reduce(&self, x: &Rat) -> Rat {
        match *self {
            FieldSpec::Rational => x.clone(),
            FieldSpec::Prime(p) => Rat::from_integer(BigInt::from(residue(x, p))),
        }
    }

    pub fn is_zero(&self, x: &Rat) -> bool {
        match *self {
            FieldSpec::Rational => x.is_zero(),
            FieldSpec::Prime(p) => residue(x, p) == 0,
        }
    }

    pub fn eq(&self, x: &Rat, y: &Rat) -> bool {
        self.is_zero(&(x - y))
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn residue(x: &Rat, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
    assert!(den != 0, "denominator of {x} vanishes mod {p}");
    mul_mod(num, inv_mod(den, p), p)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Field arithmetic used by the shared elimination routine.
pub(crate) trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    fn lift(&self, x: &Rat) -> Self::E;
    fn to_rat(&self, x: &Self::E) -> Rat;
}

pub(crate) struct RationalArith;

impl Arith for RationalArith {
    type E = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn is_zero(&self, x: &Rat) -> bool {
        x.is_zero()
    }
    fn sub(&self, x: &Rat, y: &Rat) -> Rat {
        x - y
    }
    fn mul(&self, x: &Rat, y: &Rat) -> Rat {
        x * y
    }
    fn inv(&self, x: &Rat) -> Rat {
        x.recip()
    }
    fn neg(&self, x: &Rat) -> Rat {
        -x
    }
    fn lift(&self, x: &Rat) -> Rat {
        x.clone()
    }
    fn to_rat(&self, x: &Rat) -> Rat {
        x.clone()
    }
}

pub(crate) struct ModArith(pub u64);

impl Arith for ModArith {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        (x + self.0 - y) % self.0
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mul_mod(*x, *y, self.0)
    }
    fn inv(&self, x: &u64) -> u64 {
        inv_mod(*x, self.0)
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.0 - x) % self.0
    }
    fn lift(&self, x: &Rat) -> u64 {
        residue(x, self.0)
    }
    fn to_rat(&self, x: &u64) -> Rat {
        Rat::from_integer(BigInt::from(*x))
    }
}

/// Row-reduces in place to reduced row echelon form and returns the pivot
/// columns. The pivot in each row is the leftmost nonzero entry.
pub(crate) fn rref<A: Arith>(ar: &A, rows: &mut Vec<Vec<A::E>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !ar.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ar.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = ar.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ar.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = ar.sub(x, &ar.mul(&factor, y));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Standard nullspace basis read off the RREF: one vector per free column,
/// with a 1 in that column.
pub(crate) fn nullspace<A: Arith>(ar: &A, rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<A::E>> = rows
        .iter()
        .map(|r| r.iter().map(|x| ar.lift(x)).collect())
        .collect();
    let pivots = rref(ar, &mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ar.zero(); ncols];
        v[free] = one_of(ar);
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = ar.neg(&row[free]);
        }
        basis.push(v.iter().map(|x| ar.to_rat(x)).collect());
    }
    basis
}

fn one_of<A: Arith>(ar: &A) -> A::E {
    ar.lift(&Rat::one())
}

/// Basis of {x : rows · x = 0} over the field.
pub fn kernel(field: FieldSpec, rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    match field {
        FieldSpec::Rational => nullspace(&RationalArith, rows, ncols),
        FieldSpec::Prime(p) => nullspace(&ModArith(p), rows, ncols),
    }
}

/// Rank of the matrix given by `rows` over the field.
pub fn rank(field: FieldSpec, rows: &[Vec<Rat>], ncols: usize) -> usize {
    match field {
        FieldSpec::Rational => {
            let mut m = rows.to_vec();
            rref(&RationalArith, &mut m, ncols).len()
        }
        FieldSpec::Prime(p) => {
            let ar = ModArith(p);
            let mut m: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|x| ar.lift(x)).collect())
                .collect();
            rref(&ar, &mut m, ncols).len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn prime_field_validation() {
        assert_eq!(FieldSpec::prime(3), Some(FieldSpec::Prime(3)));
        assert_eq!(FieldSpec::prime(2), None);
        assert_eq!(FieldSpec::prime(9), None);
        assert_eq!(FieldSpec::prime(101), Some(FieldSpec::Prime(101)));
    }

    #[test]
    fn residues_of_fractions() {
        let f = FieldSpec::Prime(5);
        assert_eq!(f.reduce(&q(-1, 1)), q(4, 1));
        // 1/2 = 3 mod 5
        assert_eq!(f.reduce(&q(1, 2)), q(3, 1));
        assert!(f.is_zero(&q(10, 3)));
        assert_eq!(FieldSpec::Rational.reduce(&q(1, 2)), q(1, 2));
    }

    #[test]
    fn kernel_over_q_and_fp() {
        let rows = vec![vec![q(1, 1), q(1, 1)]];
        assert_eq!(
            kernel(FieldSpec::Rational, &rows, 2),
            vec![vec![q(-1, 1), q(1, 1)]]
        );
        assert_eq!(
            kernel(FieldSpec::Prime(3), &rows, 2),
            vec![vec![q(2, 1), q(1, 1)]]
        );
        // 3x = 0 has a full kernel mod 3 only
        let rows = vec![vec![q(3, 1)]];
        assert!(kernel(FieldSpec::Rational, &rows, 1).is_empty());
        assert_eq!(kernel(FieldSpec::Prime(3), &rows, 1).len(), 1);
    }

    #[test]
    fn rank_of_empty_and_square() {
        assert_eq!(rank(FieldSpec::Rational, &[], 3), 0);
        let rows = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(rank(FieldSpec::Rational, &rows, 2), 1);
    }
}
