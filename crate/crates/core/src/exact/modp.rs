//! Reduction of Q(ω) modulo a prime `p ≡ 1 (mod 3)`, where ω maps to a
//! primitive cube root of unity in F_p.
//!
//! Reduction never increases rank: a nonzero minor mod p lifts to a nonzero
//! minor over Q(ω). Full rank mod p therefore certifies full rank exactly.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::{Cyclotomic, Rational};
use super::matrix::Matrix;

/// 2⁶¹ − 1, a Mersenne prime congruent to 1 mod 3.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    omega: u64,
}

impl PrimeField {
    /// F_p with ω sent to `g^((p−1)/3)` for the least `g ≥ 2` giving a
    /// nontrivial cube root. Requires `p` prime with `p ≡ 1 (mod 3)`.
    pub fn new(p: u64) -> Self {
        assert!(p % 3 == 1, "p must be 1 mod 3");
        let mut f = Self { p, omega: 0 };
        f.omega = (2..)
            .map(|g| f.pow(g, (p - 1) / 3))
            .find(|&w| w != 1)
            .expect("a non-cube exists");
        f
    }

    pub fn standard() -> &'static PrimeField {
        static FIELD: OnceLock<PrimeField> = OnceLock::new();
        FIELD.get_or_init(|| PrimeField::new(MERSENNE_61))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    fn reduce_int(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let mut r = x % &m;
        if r < BigInt::zero() {
            r += &m;
        }
        r.to_u64().expect("residue fits in u64")
    }

    /// `None` when p divides the denominator.
    pub fn reduce_rational(&self, r: &Rational) -> Option<u64> {
        let d = self.inv(self.reduce_int(r.denom()))?;
        Some(self.mul(self.reduce_int(r.numer()), d))
    }

    pub fn reduce(&self, x: &Cyclotomic) -> Option<u64> {
        let re = self.reduce_rational(&x.re)?;
        let om = self.reduce_rational(&x.om)?;
        Some(self.add(re, self.mul(om, self.omega)))
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Option<ModMatrix> {
        let data = m
            .entries()
            .iter()
            .map(|x| self.reduce(x))
            .collect::<Option<Vec<_>>>()?;
        Some(ModMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }
}

/// Dense matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn mul(&self, f: &PrimeField, rhs: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut data = vec![0u64; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    data[idx] = f.add(data[idx], f.mul(a, rhs.data[k * rhs.cols + j]));
                }
            }
        }
        ModMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }
}

/// Row-echelon span over F_p; same scheme as [`super::Span`].
#[derive(Clone, Debug)]
pub struct ModSpan {
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModSpan {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn insert(&mut self, f: &PrimeField, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        for (p, row) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(*p) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("nonzero");
        for x in v.iter_mut().skip(p) {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_primitive_cube_root() {
        let f = PrimeField::standard();
        let w = f.omega();
        assert_ne!(w, 1);
        assert_eq!(f.pow(w, 3), 1);
        assert_eq!(f.add(f.add(1, w), f.mul(w, w)), 0);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = PrimeField::standard();
        let xs: Vec<Cyclotomic> = ["1/2+3w", "-7/9-w", "w", "5", "-1/3+2/5w"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for x in &xs {
            for y in &xs {
                let prod = f.reduce(&(x * y)).unwrap();
                assert_eq!(prod, f.mul(f.reduce(x).unwrap(), f.reduce(y).unwrap()));
                let sum = f.reduce(&(x + y)).unwrap();
                assert_eq!(sum, f.add(f.reduce(x).unwrap(), f.reduce(y).unwrap()));
            }
        }
    }

    #[test]
    fn denominators_divisible_by_p_do_not_reduce() {
        let f = PrimeField::new(7);
        let x = Cyclotomic::from_ratio(1, 7);
        assert_eq!(f.reduce(&x), None);
        assert_eq!(f.reduce(&Cyclotomic::from_ratio(3, 2)), Some(5));
    }

    #[test]
    fn mod_span_dimension() {
        let f = PrimeField::new(7);
        let mut s = ModSpan::new(2);
        assert!(s.insert(&f, vec![1, 2]));
        assert!(!s.insert(&f, vec![2, 4]));
        // 3·(1,2) = (3,6) ≡ (3,−1)
        assert!(!s.insert(&f, vec![3, 6]));
        assert!(s.insert(&f, vec![0, 1]));
        assert!(s.is_full());
    }
}
