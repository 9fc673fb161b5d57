//! Deformation families of `n`-dimensional irreducibles.
//!
//! The summands `S₁₁, T₁(λ₁), T₂(λ₂), T₁(λ₃), …` are glued along the chain
//! quiver from [`sigma_quiver`]: an arrow `v_i → v_j` with label `x` adds `x`
//! times an Ext¹(V_i, V_j) cocycle into the `(j, i)` block of every arrow map.
//! Every member is then certified exactly; nothing is assumed about genericity.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::braid::{k_default, lift_to_b3, B3Rep};
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Matrix, Rational, RationalTuple};
use crate::gamma0::{
    hom_ext, make_s, make_t, Fingerprint, Gamma0Rep, QRep, Word, A_SLOTS, B_SLOTS,
};
use crate::quiver::{sigma_quiver, LabeledQuiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawSpec", try_from = "RawSpec")]
pub struct FamilySpec {
    pub n: usize,
    pub lambdas: Vec<Rational>,
    /// Loop label first when `n` is even, then forward arrows in chain order.
    pub arrow_scalars: Vec<Cyclotomic>,
    pub mu: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    n: usize,
    lambdas: Vec<RationalTuple>,
    arrow_scalars: Vec<Cyclotomic>,
    mu: RationalTuple,
}

impl From<FamilySpec> for RawSpec {
    fn from(s: FamilySpec) -> Self {
        Self {
            n: s.n,
            lambdas: s.lambdas.into_iter().map(RationalTuple).collect(),
            arrow_scalars: s.arrow_scalars,
            mu: RationalTuple(s.mu),
        }
    }
}

impl TryFrom<RawSpec> for FamilySpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        Ok(FamilySpec {
            n: r.n,
            lambdas: r.lambdas.into_iter().map(|t| t.0).collect(),
            arrow_scalars: r.arrow_scalars,
            mu: r.mu.0,
        })
    }
}

impl FamilySpec {
    /// A spec with every arrow scalar set to 1.
    pub fn new(n: usize, lambdas: Vec<Rational>, mu: Rational) -> Self {
        Self {
            n,
            arrow_scalars: vec![Cyclotomic::one(); n / 2],
            lambdas,
            mu,
        }
    }

    pub fn with_arrow_scalars(mut self, scalars: Vec<Cyclotomic>) -> Self {
        self.arrow_scalars = scalars;
        self
    }

    /// Free parameters: the `λ`s and `μ`.
    pub fn parameter_count(&self) -> usize {
        self.lambdas.len() + 1
    }

    pub fn validate(&self) -> Result<()> {
        validate_lambdas(self.n, &self.lambdas)?;
        let k = self.n / 2;
        if self.arrow_scalars.len() != k {
            return Err(Error::InvalidSpec(format!(
                "n = {} needs {k} arrow scalars, got {}",
                self.n,
                self.arrow_scalars.len()
            )));
        }
        let first_forward = if self.n.is_multiple_of(2) { 1 } else { 0 };
        if let Some(p) = self.arrow_scalars[first_forward.min(k)..]
            .iter()
            .position(Cyclotomic::is_zero)
        {
            return Err(Error::InvalidSpec(format!(
                "forward arrow scalar {} is zero",
                p + first_forward + 1
            )));
        }
        if self.mu.is_zero() {
            return Err(Error::ZeroMu);
        }
        Ok(())
    }
}

fn validate_lambdas(n: usize, lambdas: &[Rational]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be positive".into()));
    }
    if lambdas.len() != n / 2 {
        return Err(Error::InvalidSpec(format!(
            "n = {n} needs {} lambdas, got {}",
            n / 2,
            lambdas.len()
        )));
    }
    let mut seen = HashSet::new();
    for l in lambdas {
        if !seen.insert(l) {
            return Err(Error::DuplicateLambda(l.to_string()));
        }
    }
    Ok(())
}

/// `[T₁(λ₁), T₂(λ₂), T₁(λ₃), …]`, with `S₁₁` prepended when `n` is odd.
pub fn summand_list(n: usize, lambdas: &[Rational]) -> Result<Vec<QRep>> {
    validate_lambdas(n, lambdas)?;
    let mut out = Vec::with_capacity(n / 2 + 1);
    if n % 2 == 1 {
        out.push(make_s(1, 1)?);
    }
    for (k, l) in lambdas.iter().enumerate() {
        out.push(make_t(if k % 2 == 0 { 1 } else { 2 }, l)?);
    }
    Ok(out)
}

/// Deforms `⊕ summands` along the labeled quiver. The `m`-th arrow `s → t`
/// uses the `m`-th Ext¹(V_s, V_t) cocycle; zero labels contribute nothing.
pub fn glue(summands: &[QRep], lq: &LabeledQuiver) -> Result<QRep> {
    if lq.quiver.vertex_count() != summands.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} summands for a quiver on {} vertices",
            summands.len(),
            lq.quiver.vertex_count()
        )));
    }
    let slots = A_SLOTS + B_SLOTS;
    // offsets[k][v]: first index of summand k inside vertex v
    let mut offsets = Vec::with_capacity(summands.len());
    let mut total = vec![0; slots];
    for s in summands {
        offsets.push(total.clone());
        for (t, d) in total.iter_mut().zip(s.dim()) {
            *t += d;
        }
    }

    let mut maps: Vec<Matrix> = (0..A_SLOTS)
        .flat_map(|i| (0..B_SLOTS).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut m = Matrix::zeros(total[A_SLOTS + j], total[i]);
            for (k, s) in summands.iter().enumerate() {
                m.set_block(offsets[k][A_SLOTS + j], offsets[k][i], s.arrow(i, j));
            }
            m
        })
        .collect();

    let mut ext_cache = HashMap::new();
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    for (&(s, t), label) in lq.quiver.arrows().iter().zip(&lq.labels) {
        let slot = used.entry((s, t)).or_insert(0);
        let which = *slot;
        *slot += 1;
        if label.is_zero() {
            continue;
        }
        let he = ext_cache
            .entry((s, t))
            .or_insert_with(|| hom_ext(&summands[s], &summands[t]));
        let cocycle = he.cocycles.get(which).ok_or(Error::MissingExtension {
            source_summand: s,
            target_summand: t,
        })?;
        for (a, m) in maps.iter_mut().enumerate() {
            let (i, j) = (a / B_SLOTS, a % B_SLOTS);
            m.add_block(
                offsets[t][A_SLOTS + j],
                offsets[s][i],
                &cocycle[a].scale(label),
            );
        }
    }
    QRep::new(total, maps)
}

/// Glues the family member without requiring the labels to be simple;
/// backward arrows carry `backward`. Useful for degenerate members.
pub fn assemble_member(
    n: usize,
    lambdas: &[Rational],
    arrow_scalars: &[Cyclotomic],
    backward: &Cyclotomic,
) -> Result<QRep> {
    let summands = summand_list(n, lambdas)?;
    if n == 1 {
        return Ok(summands.into_iter().next().expect("one summand"));
    }
    let lq = sigma_quiver(n)?.labeled(arrow_scalars, backward)?;
    glue(&summands, &lq)
}

/// The `n`-dimensional member for a validated spec. Requires the labeled
/// chain quiver to be simple and the glued base change to be invertible.
pub fn build_family_member(spec: &FamilySpec) -> Result<QRep> {
    spec.validate()?;
    if spec.n == 1 {
        return make_s(1, 1);
    }
    let lq = sigma_quiver(spec.n)?.labeled(&spec.arrow_scalars, &Cyclotomic::one())?;
    if !lq.onedim_is_simple() {
        return Err(Error::NotSimple);
    }
    let r = glue(&summand_list(spec.n, &spec.lambdas)?, &lq)?;
    r.base_change()?;
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub braid_ok: bool,
    pub irreducible: bool,
    pub central_ok: bool,
    pub fingerprint: Fingerprint,
    pub parameter_count: usize,
}

impl Certificate {
    pub fn accepted(&self) -> bool {
        self.braid_ok && self.irreducible && self.central_ok
    }

    fn failed(parameter_count: usize) -> Self {
        Self {
            braid_ok: false,
            irreducible: false,
            central_ok: false,
            fingerprint: Fingerprint(Vec::new()),
            parameter_count,
        }
    }
}

/// A certified member together with its intermediate representations.
#[derive(Clone, Debug)]
pub struct Certified {
    pub gamma0: Option<Gamma0Rep>,
    pub b3: Option<B3Rep>,
    pub certificate: Certificate,
}

/// Runs the full chain on `r`: modular-group pair, Burnside test, lift with
/// central parameter `mu`, braid relation and central character. A singular
/// base change or `mu = 0` yields a failing certificate.
pub fn certify(r: &QRep, mu: &Rational, words: &[Word]) -> Certified {
    let params = k_default(r.n());
    let Ok(g) = r.to_gamma0() else {
        return Certified {
            gamma0: None,
            b3: None,
            certificate: Certificate::failed(params),
        };
    };
    let fingerprint = g.fingerprint_with(words);
    let irreducible = g.satisfies_relations() && g.is_irreducible();
    let Ok(b3) = lift_to_b3(&g, mu) else {
        let mut certificate = Certificate::failed(params);
        certificate.irreducible = irreducible;
        certificate.fingerprint = fingerprint;
        return Certified {
            gamma0: Some(g),
            b3: None,
            certificate,
        };
    };
    let braid_ok = b3.check_braid();
    let central_ok = b3
        .central_character()
        .is_ok_and(|c| c == b3.expected_central());
    Certified {
        gamma0: Some(g),
        b3: Some(b3),
        certificate: Certificate {
            braid_ok,
            irreducible,
            central_ok,
            fingerprint,
            parameter_count: params,
        },
    }
}

pub fn certify_member(r: &QRep, mu: &Rational) -> Certificate {
    certify(r, mu, &Word::defaults()).certificate
}

/// Whether all fingerprints (under the default words) are pairwise different.
pub fn pairwise_distinct(members: &[Gamma0Rep]) -> bool {
    let mut seen = HashSet::new();
    members.iter().all(|g| seen.insert(g.fingerprint()))
}
