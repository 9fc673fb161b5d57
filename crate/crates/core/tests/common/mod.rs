//! Brute-force oracles shared by the integration tests. None of them call
//! into the Burnside span, the strong-connectivity check or the Euler form
//! they are checked against.

#![allow(dead_code)]

use braidforge::exact::{Cyclotomic, Matrix, Rational};
use braidforge::family::FamilySpec;
use braidforge::gamma0::{make_s, make_t, Gamma0Rep, QRep};
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// χ(α, β) on the bipartite five-vertex quiver, written out by hand.
pub fn euler_by_hand(a: &[usize], b: &[usize]) -> i64 {
    let diag: i64 = a.iter().zip(b).map(|(x, y)| (x * y) as i64).sum();
    let sources: usize = a[..2].iter().sum();
    let sinks: usize = b[2..].iter().sum();
    diag - (sources * sinks) as i64
}

fn stacked(blocks: &[Matrix]) -> Matrix {
    let cols = blocks[0].cols();
    let rows = blocks.iter().flat_map(|m| m.to_rows()).collect::<Vec<_>>();
    Matrix::from_rows(rows, cols).unwrap()
}

/// A vector fixed (up to the eigenvalues ±1 and 1, ω, ω²) by both `u` and
/// `v`, found as the kernel of `[u − a; v − b]`.
pub fn common_eigenvector(u: &Matrix, v: &Matrix) -> Option<Vec<Cyclotomic>> {
    let n = u.rows();
    let id = Matrix::identity(n);
    for a in [Cyclotomic::one(), -Cyclotomic::one()] {
        for b in [
            Cyclotomic::one(),
            Cyclotomic::omega(),
            Cyclotomic::omega_sq(),
        ] {
            let m = stacked(&[u - &id.scale(&a), v - &id.scale(&b)]);
            if let Some(k) = m.kernel_basis().into_iter().next() {
                return Some(k);
            }
        }
    }
    None
}

/// Invariant-subspace search valid for `n ≤ 3`, where every proper subspace
/// is a line or a hyperplane. Hyperplanes are lines for the transposes.
pub fn has_invariant_subspace(g: &Gamma0Rep) -> bool {
    assert!(g.n() <= 3, "oracle only complete for n <= 3");
    if g.n() <= 1 {
        return false;
    }
    common_eigenvector(g.u(), g.v()).is_some()
        || common_eigenvector(&g.u().transpose(), &g.v().transpose()).is_some()
}

/// Dimension-one representation is simple iff no proper nonempty vertex
/// subset is closed under the arrows with nonzero label.
pub fn brute_onedim_simple(vertices: usize, arrows: &[(usize, usize)], labels: &[bool]) -> bool {
    if vertices <= 1 {
        return true;
    }
    for mask in 1u32..(1 << vertices) - 1 {
        let closed = arrows
            .iter()
            .zip(labels)
            .all(|(&(s, t), &on)| !on || mask >> s & 1 == 0 || mask >> t & 1 == 1);
        if closed {
            return false;
        }
    }
    true
}

/// A random S or T representation, with λ ∉ {0, 1}.
pub fn random_summand(r: &mut ChaCha8Rng) -> QRep {
    if r.gen_bool(0.5) {
        make_s(r.gen_range(1..=2), r.gen_range(1..=3)).unwrap()
    } else {
        let lambda = loop {
            let l = qq(r.gen_range(-20..=20), r.gen_range(1..=4));
            if l != q(0) && l != q(1) {
                break l;
            }
        };
        make_t(r.gen_range(1..=3), &lambda).unwrap()
    }
}

/// Distinct integer lambdas in 2..=40, unit arrow scalars.
pub fn random_spec(r: &mut ChaCha8Rng, n: usize, mu: i64) -> FamilySpec {
    let count = n / 2;
    let lambdas = sample(r, 39, count)
        .into_iter()
        .map(|i| q(i as i64 + 2))
        .collect();
    FamilySpec::new(n, lambdas, q(mu))
}
