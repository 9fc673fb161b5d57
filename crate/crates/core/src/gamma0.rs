//! Representations of the modular group ⟨u, v | u² = v³ = 1⟩ and the
//! five-vertex bipartite quiver encoding them.
//!
//! A representation is recorded by its eigenspace dimensions
//! `(a₁, a₂; b₁, b₂, b₃)` and the base change `B` from a basis adapted to the
//! `u`-eigenspaces (eigenvalues +1, −1) to one adapted to the `v`-eigenspaces
//! (eigenvalues 1, ω, ω²). In the `u`-adapted basis
//!
//! ```text
//! U = diag(+1 ×a₁, −1 ×a₂),    V = B⁻¹ · diag(1 ×b₁, ω ×b₂, ω² ×b₃) · B.
//! ```

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Matrix, ModMatrix, ModSpan, PrimeField, Rational, Span};
use crate::quiver::{DimVec, Quiver};

/// Number of source vertices (`u`-eigenspaces).
pub const A_SLOTS: usize = 2;
/// Number of sink vertices (`v`-eigenspaces).
pub const B_SLOTS: usize = 3;

/// Index of the arrow `a_i → b_j` (zero-based) in lexicographic order.
pub fn arrow_index(i: usize, j: usize) -> usize {
    i * B_SLOTS + j
}

/// Vertices `(a₁, a₂, b₁, b₂, b₃)`, arrows `a_i → b_j` in lexicographic order.
pub fn westbury_quiver() -> Quiver {
    let arrows = (0..A_SLOTS)
        .flat_map(|i| (0..B_SLOTS).map(move |j| (i, A_SLOTS + j)))
        .collect();
    Quiver::new(A_SLOTS + B_SLOTS, arrows).expect("fixed quiver is well formed")
}

/// A representation of the five-vertex quiver: one matrix of shape
/// `b_j × a_i` per arrow `a_i → b_j`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawQRep")]
pub struct QRep {
    dim: DimVec,
    arrows: Vec<Matrix>,
}

#[derive(Deserialize)]
struct RawQRep {
    dim: DimVec,
    arrows: Vec<Matrix>,
}

impl TryFrom<RawQRep> for QRep {
    type Error = Error;
    fn try_from(raw: RawQRep) -> Result<Self> {
        QRep::new(raw.dim, raw.arrows)
    }
}

impl QRep {
    pub fn new(dim: DimVec, arrows: Vec<Matrix>) -> Result<Self> {
        if dim.len() != A_SLOTS + B_SLOTS {
            return Err(Error::DimensionMismatch {
                expected: A_SLOTS + B_SLOTS,
                got: dim.len(),
            });
        }
        if arrows.len() != A_SLOTS * B_SLOTS {
            return Err(Error::ShapeMismatch(format!(
                "{} arrow maps, expected 6",
                arrows.len()
            )));
        }
        let mut arrows = arrows;
        for i in 0..A_SLOTS {
            for j in 0..B_SLOTS {
                let want = (dim[A_SLOTS + j], dim[i]);
                let m = &mut arrows[arrow_index(i, j)];
                // empty matrices lose their shape in nested-array form
                if m.entries().is_empty() && want.0 * want.1 == 0 {
                    *m = Matrix::zeros(want.0, want.1);
                }
                if m.shape() != want {
                    return Err(Error::ShapeMismatch(format!(
                        "arrow a{}->b{} is {}x{}, expected {}x{}",
                        i + 1,
                        j + 1,
                        m.rows(),
                        m.cols(),
                        want.0,
                        want.1
                    )));
                }
            }
        }
        Ok(Self { dim, arrows })
    }

    pub fn zero(dim: DimVec) -> Result<Self> {
        if dim.len() != A_SLOTS + B_SLOTS {
            return Err(Error::DimensionMismatch {
                expected: A_SLOTS + B_SLOTS,
                got: dim.len(),
            });
        }
        let arrows = (0..A_SLOTS)
            .flat_map(|i| (0..B_SLOTS).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::zeros(dim[A_SLOTS + j], dim[i]))
            .collect();
        Ok(Self { dim, arrows })
    }

    pub fn dim(&self) -> &DimVec {
        &self.dim
    }

    /// Total dimension on the `u` side, `a₁ + a₂`.
    pub fn n(&self) -> usize {
        self.dim[..A_SLOTS].iter().sum()
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize, j: usize) -> &Matrix {
        &self.arrows[arrow_index(i, j)]
    }

    pub fn direct_sum(&self, other: &QRep) -> QRep {
        let dim = self
            .dim
            .iter()
            .zip(&other.dim)
            .map(|(a, b)| a + b)
            .collect();
        let arrows = self
            .arrows
            .iter()
            .zip(&other.arrows)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        QRep { dim, arrows }
    }

    /// Assembles the base change `B`: rows grouped by `b`-slot, columns by
    /// `a`-slot. Fails if the dimension vector is unbalanced or `B` is singular.
    pub fn base_change(&self) -> Result<Matrix> {
        let b = self.assemble_unchecked()?;
        if b.rank() < b.rows() {
            return Err(Error::DegenerateBaseChange);
        }
        Ok(b)
    }

    fn assemble_unchecked(&self) -> Result<Matrix> {
        let a: usize = self.dim[..A_SLOTS].iter().sum();
        let bsum: usize = self.dim[A_SLOTS..].iter().sum();
        if a != bsum {
            return Err(Error::NonSquare { a, b: bsum });
        }
        let mut out = Matrix::zeros(a, a);
        let mut row0 = 0;
        for j in 0..B_SLOTS {
            let mut col0 = 0;
            for i in 0..A_SLOTS {
                out.set_block(row0, col0, self.arrow(i, j));
                col0 += self.dim[i];
            }
            row0 += self.dim[A_SLOTS + j];
        }
        Ok(out)
    }

    pub fn to_gamma0(&self) -> Result<Gamma0Rep> {
        let b = self.assemble_unchecked()?;
        let b_inv = b.inverse().map_err(|_| Error::DegenerateBaseChange)?;
        let one = Cyclotomic::one();
        let u_diag: Vec<Cyclotomic> = std::iter::repeat_n(one.clone(), self.dim[0])
            .chain(std::iter::repeat_n(-&one, self.dim[1]))
            .collect();
        let eigen = [one, Cyclotomic::omega(), Cyclotomic::omega_sq()];
        let v_diag: Vec<Cyclotomic> = (0..B_SLOTS)
            .flat_map(|j| std::iter::repeat_n(eigen[j].clone(), self.dim[A_SLOTS + j]))
            .collect();
        let u = Matrix::diagonal(&u_diag);
        let v = &(&b_inv * &Matrix::diagonal(&v_diag)) * &b;
        Ok(Gamma0Rep { u, v })
    }
}

/// Dimension vector of `S_ij`: the `i`-th `a`-slot and `j`-th `b`-slot.
pub fn s_dim(i: usize, j: usize) -> DimVec {
    let mut d = vec![0; A_SLOTS + B_SLOTS];
    d[i - 1] = 1;
    d[A_SLOTS + j - 1] = 1;
    d
}

/// Dimension vector of `T_i`: both `a`-slots, the two `b`-slots other than `i`.
pub fn t_dim(i: usize) -> DimVec {
    let mut d = vec![1; A_SLOTS + B_SLOTS];
    d[A_SLOTS + i - 1] = 0;
    d
}

/// The one-dimensional representation `S_ij` (`i ∈ {1,2}`, `j ∈ {1,2,3}`) on
/// which `u` acts by the `i`-th and `v` by the `j`-th eigenvalue.
pub fn make_s(i: usize, j: usize) -> Result<QRep> {
    if !(1..=A_SLOTS).contains(&i) || !(1..=B_SLOTS).contains(&j) {
        return Err(Error::IndexOutOfRange(format!("S_{i}{j}")));
    }
    let mut r = QRep::zero(s_dim(i, j))?;
    r.arrows[arrow_index(i - 1, j - 1)] = Matrix::identity(1);
    Ok(r)
}

/// The two-dimensional representation `T_i(λ)` without parameter checks.
/// The two active `b`-rows carry the block `[[λ, 1], [1, 1]]`.
pub fn make_t_unchecked(i: usize, lambda: &Rational) -> Result<QRep> {
    if !(1..=B_SLOTS).contains(&i) {
        return Err(Error::IndexOutOfRange(format!("T_{i}")));
    }
    let active: Vec<usize> = (0..B_SLOTS).filter(|&j| j != i - 1).collect();
    let (first, last) = (active[0], active[1]);
    let mut r = QRep::zero(t_dim(i))?;
    let one = Matrix::identity(1);
    r.arrows[arrow_index(0, first)] = Matrix::scalar(1, &Cyclotomic::from_rational(lambda.clone()));
    r.arrows[arrow_index(0, last)] = one.clone();
    r.arrows[arrow_index(1, first)] = one.clone();
    r.arrows[arrow_index(1, last)] = one;
    Ok(r)
}

/// `T_i(λ)`; rejects λ = 1 (singular base change) and λ = 0 (reducible).
pub fn make_t(i: usize, lambda: &Rational) -> Result<QRep> {
    if lambda.is_one() {
        return Err(Error::DegenerateBaseChange);
    }
    if lambda.is_zero() {
        return Err(Error::ReducibleParameter(format!("T_{i}(0)")));
    }
    make_t_unchecked(i, lambda)
}

/// A summand label such as `S11`, `T2:3` or `T1:-1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SummandLabel {
    S(usize, usize),
    T(usize, Rational),
}

impl SummandLabel {
    pub fn build(&self) -> Result<QRep> {
        match self {
            SummandLabel::S(i, j) => make_s(*i, *j),
            SummandLabel::T(i, l) => make_t(*i, l),
        }
    }
}

impl FromStr for SummandLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || {
            Error::Parse(format!(
                "invalid summand {s:?}; expected S<i><j> or T<i>:<lambda>"
            ))
        };
        let digit = |c: Option<char>| {
            c.and_then(|c| c.to_digit(10))
                .map(|d| d as usize)
                .ok_or_else(bad)
        };
        let mut chars = s.chars();
        match chars.next() {
            Some('S') => {
                let i = digit(chars.next())?;
                let j = digit(chars.next())?;
                if chars.next().is_some() {
                    return Err(bad());
                }
                Ok(SummandLabel::S(i, j))
            }
            Some('T') => {
                let (head, lambda) = s[1..].split_once(':').ok_or_else(bad)?;
                let i = head.parse::<usize>().map_err(|_| bad())?;
                Ok(SummandLabel::T(i, crate::exact::parse_rational(lambda)?))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandLabel::S(i, j) => write!(f, "S{i}{j}"),
            SummandLabel::T(i, l) => write!(f, "T{i}:{l}"),
        }
    }
}

/// A pair `(U, V)` with `U² = I` and `V³ = I`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(into = "RawGamma0", try_from = "RawGamma0")]
pub struct Gamma0Rep {
    u: Matrix,
    v: Matrix,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawGamma0 {
    n: usize,
    #[serde(rename = "U")]
    u: Matrix,
    #[serde(rename = "V")]
    v: Matrix,
}

impl From<Gamma0Rep> for RawGamma0 {
    fn from(g: Gamma0Rep) -> Self {
        Self {
            n: g.n(),
            u: g.u,
            v: g.v,
        }
    }
}

impl TryFrom<RawGamma0> for Gamma0Rep {
    type Error = Error;
    fn try_from(r: RawGamma0) -> Result<Self> {
        if r.u.shape() != (r.n, r.n) {
            return Err(Error::DimensionMismatch {
                expected: r.n,
                got: r.u.rows(),
            });
        }
        Gamma0Rep::new_unchecked(r.u, r.v)
    }
}

impl Gamma0Rep {
    pub fn new(u: Matrix, v: Matrix) -> Result<Self> {
        let g = Self::new_unchecked(u, v)?;
        if !g.u.pow(2).is_identity() {
            return Err(Error::InvalidSpec("U^2 != I".into()));
        }
        if !g.v.pow(3).is_identity() {
            return Err(Error::InvalidSpec("V^3 != I".into()));
        }
        Ok(g)
    }

    /// Only checks that both matrices are square of the same size.
    pub fn new_unchecked(u: Matrix, v: Matrix) -> Result<Self> {
        if !u.is_square() || u.shape() != v.shape() {
            return Err(Error::ShapeMismatch(format!(
                "generators {}x{} and {}x{}",
                u.rows(),
                u.cols(),
                v.rows(),
                v.cols()
            )));
        }
        Ok(Self { u, v })
    }

    pub fn n(&self) -> usize {
        self.u.rows()
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn satisfies_relations(&self) -> bool {
        self.u.pow(2).is_identity() && self.v.pow(3).is_identity()
    }

    pub fn conjugate(&self, p: &Matrix) -> Result<Gamma0Rep> {
        let p_inv = p.inverse()?;
        Ok(Gamma0Rep {
            u: &(p * &self.u) * &p_inv,
            v: &(p * &self.v) * &p_inv,
        })
    }

    /// Burnside: irreducible iff `U`, `V` generate all `n×n` matrices.
    ///
    /// A full span modulo 2⁶¹ − 1 settles the question; otherwise the span
    /// is recomputed over Q(ω).
    pub fn is_irreducible(&self) -> bool {
        let n = self.n();
        let gens = [&self.u, &self.v];
        if algebra_dimension_mod(PrimeField::standard(), n, &gens) == Some(n * n) {
            return true;
        }
        algebra_dimension(n, &gens) == n * n
    }

    pub fn direct_sum(&self, other: &Gamma0Rep) -> Gamma0Rep {
        Gamma0Rep {
            u: self.u.direct_sum(&other.u),
            v: self.v.direct_sum(&other.v),
        }
    }

    pub fn word(&self, w: &Word) -> Matrix {
        let mut acc = Matrix::identity(self.n());
        for l in &w.0 {
            acc = match l {
                Letter::U => &acc * &self.u,
                Letter::V => &acc * &self.v,
            };
        }
        acc
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint_with(&Word::defaults())
    }

    pub fn fingerprint_with(&self, words: &[Word]) -> Fingerprint {
        Fingerprint(words.iter().map(|w| self.word(w).trace()).collect())
    }
}

/// Dimension of the unital algebra generated by `gens` inside `n×n` matrices:
/// the span of `{I}` closed under left multiplication by the generators.
pub fn algebra_dimension(n: usize, gens: &[&Matrix]) -> usize {
    let mut span = Span::new(n * n);
    if n == 0 {
        return 0;
    }
    let id = Matrix::identity(n);
    span.insert(id.entries().to_vec());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let p = *g * &m;
            if span.insert(p.entries().to_vec()) {
                if span.is_full() {
                    return span.len();
                }
                queue.push_back(p);
            }
        }
    }
    span.len()
}

/// [`algebra_dimension`] after reduction mod p: a lower bound for the
/// dimension over Q(ω). `None` if some entry does not reduce.
pub fn algebra_dimension_mod(field: &PrimeField, n: usize, gens: &[&Matrix]) -> Option<usize> {
    if n == 0 {
        return Some(0);
    }
    let gens = gens
        .iter()
        .map(|g| field.reduce_matrix(g))
        .collect::<Option<Vec<_>>>()?;
    let mut span = ModSpan::new(n * n);
    let id = ModMatrix::identity(n);
    span.insert(field, id.entries().to_vec());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = g.mul(field, &m);
            if span.insert(field, p.entries().to_vec()) {
                if span.is_full() {
                    return Some(span.len());
                }
                queue.push_back(p);
            }
        }
    }
    Some(span.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    U,
    V,
}

/// A positive word in the generators, multiplied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    /// `U, V, UV, UV², UVUV², (UV)²`.
    pub fn defaults() -> Vec<Word> {
        ["U", "V", "UV", "UVV", "UVUVV", "UVUV"]
            .iter()
            .map(|s| s.parse().expect("default words parse"))
            .collect()
    }

    /// Parses a comma-separated list of words, e.g. `UVV,VVU`.
    pub fn parse_list(s: &str) -> Result<Vec<Word>> {
        s.split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        s.chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Letter::U),
                'V' | 'v' => Ok(Letter::V),
                _ => Err(Error::Parse(format!("invalid letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::U { 'U' } else { 'V' })?;
        }
        Ok(())
    }
}

/// Traces of a fixed word list. Conjugation invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fingerprint(pub Vec<Cyclotomic>);

/// Dimensions of Hom and Ext¹ between two representations, with lifts of an
/// Ext¹ basis. Each cocycle is one `W_t × V_s` matrix per arrow `s → t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomExt {
    pub hom_dim: usize,
    pub ext_dim: usize,
    pub cocycles: Vec<Vec<Matrix>>,
}

/// Computes Hom and Ext¹ from the complex
/// `⊕_v Hom(V_v, W_v) → ⊕_{a: s→t} Hom(V_s, W_t)`, `φ ↦ φ_t V_a − W_a φ_s`.
///
/// Cocycles are unit vectors at the earliest coordinates that complement the
/// image, arrows taken in lexicographic order and entries row-major.
pub fn hom_ext(vrep: &QRep, wrep: &QRep) -> HomExt {
    let q = westbury_quiver();
    hom_ext_over(q.arrows(), &vrep.dim, &vrep.arrows, &wrep.dim, &wrep.arrows)
}

fn hom_ext_over(
    arrows: &[(usize, usize)],
    vdim: &[usize],
    vmaps: &[Matrix],
    wdim: &[usize],
    wmaps: &[Matrix],
) -> HomExt {
    // source coordinates: φ_v[r][c] with r < W_v, c < V_v
    let mut src_off = Vec::with_capacity(vdim.len());
    let mut src_len = 0;
    for (&dv, &dw) in vdim.iter().zip(wdim) {
        src_off.push(src_len);
        src_len += dw * dv;
    }
    // target coordinates: ψ_a[r][c] with r < W_t, c < V_s
    let mut tgt_off = Vec::with_capacity(arrows.len());
    let mut tgt_len = 0;
    for &(s, t) in arrows {
        tgt_off.push(tgt_len);
        tgt_len += wdim[t] * vdim[s];
    }

    let mut f = Matrix::zeros(tgt_len, src_len);
    for (a, &(s, t)) in arrows.iter().enumerate() {
        let (va, wa) = (&vmaps[a], &wmaps[a]);
        for r in 0..wdim[t] {
            for c in 0..vdim[s] {
                let row = tgt_off[a] + r * vdim[s] + c;
                // + φ_t[r][k] · V_a[k][c]
                for k in 0..vdim[t] {
                    f[(row, src_off[t] + r * vdim[t] + k)] += &va[(k, c)];
                }
                // − W_a[r][k] · φ_s[k][c]
                for k in 0..wdim[s] {
                    f[(row, src_off[s] + k * vdim[s] + c)] -= &wa[(r, k)];
                }
            }
        }
    }

    // image spanned by the columns of f; complement it by the earliest
    // coordinate unit vectors
    let mut span = Span::new(tgt_len);
    let ft = f.transpose();
    for r in 0..ft.rows() {
        span.insert(ft.row(r).to_vec());
    }
    let rank = span.len();
    let mut free = Vec::new();
    for coord in 0..tgt_len {
        if span.is_full() {
            break;
        }
        let mut e = vec![Cyclotomic::zero(); tgt_len];
        e[coord] = Cyclotomic::one();
        if span.insert(e) {
            free.push(coord);
        }
    }
    let cocycles = free
        .into_iter()
        .map(|coord| {
            arrows
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let mut m = Matrix::zeros(wdim[t], vdim[s]);
                    let local = coord.wrapping_sub(tgt_off[a]);
                    if coord >= tgt_off[a] && local < wdim[t] * vdim[s] {
                        m[(local / vdim[s], local % vdim[s])] = Cyclotomic::one();
                    }
                    m
                })
                .collect()
        })
        .collect();
    HomExt {
        hom_dim: src_len - rank,
        ext_dim: tgt_len - rank,
        cocycles,
    }
}
