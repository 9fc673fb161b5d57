//! Quiver combinatorics: Euler forms, strong connectivity, local quivers and
//! the chain quivers hosting the deformation families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Cyclotomic;

pub type DimVec = Vec<usize>;

/// A finite quiver. Loops and parallel arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuiver")]
pub struct Quiver {
    #[serde(rename = "vertices")]
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawQuiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl TryFrom<RawQuiver> for Quiver {
    type Error = Error;
    fn try_from(raw: RawQuiver) -> Result<Self> {
        Quiver::new(raw.vertices, raw.arrows)
    }
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let q = Self {
            vertex_count,
            arrows,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, &(s, t)) in self.arrows.iter().enumerate() {
            for e in [s, t] {
                if e >= self.vertex_count {
                    return Err(Error::ArrowOutOfRange {
                        arrow: i,
                        endpoint: e,
                        vertices: self.vertex_count,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| s == v && t == v)
            .count()
    }

    /// Number of arrows `s → t` (loops when `s == t`).
    pub fn arrows_between(&self, s: usize, t: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (s, t)).count()
    }

    pub fn ones(&self) -> DimVec {
        vec![1; self.vertex_count]
    }

    /// χ(α, β) = Σ_v α_v β_v − Σ_{a: i→j} α_i β_j.
    pub fn euler_form(&self, alpha: &[usize], beta: &[usize]) -> Result<i64> {
        for d in [alpha, beta] {
            if d.len() != self.vertex_count {
                return Err(Error::DimensionMismatch {
                    expected: self.vertex_count,
                    got: d.len(),
                });
            }
        }
        let diag: i64 = alpha.iter().zip(beta).map(|(&a, &b)| (a * b) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|&(s, t)| (alpha[s] * beta[t]) as i64)
            .sum();
        Ok(diag - off)
    }

    /// The matrix `M` with χ(α, β) = αᵀ M β.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            m[s][t] -= 1;
        }
        m
    }

    /// 1 − χ(𝟙, 𝟙): the dimension of the moduli of simple representations
    /// with all vertex dimensions one.
    pub fn family_dimension(&self) -> i64 {
        1 - (self.vertex_count as i64 - self.arrows.len() as i64)
    }

    /// Whether every ordered pair of vertices in scope is joined by a
    /// directed path using only arrows inside the scope.
    pub fn is_strongly_connected(&self, restrict_to: Option<&[usize]>) -> bool {
        let scope: Vec<usize> = match restrict_to {
            Some(vs) => vs.to_vec(),
            None => (0..self.vertex_count).collect(),
        };
        strongly_connected(self.vertex_count, &self.arrows, &scope)
    }
}

fn strongly_connected(vertex_count: usize, arrows: &[(usize, usize)], scope: &[usize]) -> bool {
    let Some(&root) = scope.first() else {
        return true;
    };
    let mut inside = vec![false; vertex_count];
    for &v in scope {
        inside[v] = true;
    }
    let mut fwd = vec![Vec::new(); vertex_count];
    let mut bwd = vec![Vec::new(); vertex_count];
    for &(s, t) in arrows {
        if s != t && inside[s] && inside[t] {
            fwd[s].push(t);
            bwd[t].push(s);
        }
    }
    let reach = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; vertex_count];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        scope.iter().all(|&v| seen[v])
    };
    reach(&fwd) && reach(&bwd)
}

/// Builds the local quiver of a collection of stable representations with
/// the given dimension vectors: `1 − χ(α_i, α_i)` loops at `v_i` and
/// `−χ(α_i, α_j)` arrows `v_i → v_j`. Vertices follow input order; arrows are
/// listed by source, then target.
pub fn local_quiver(base: &Quiver, dims: &[DimVec]) -> Result<Quiver> {
    let mut arrows = Vec::new();
    for (i, a) in dims.iter().enumerate() {
        for (j, b) in dims.iter().enumerate() {
            let chi = base.euler_form(a, b)?;
            let count = if i == j { 1 - chi } else { -chi };
            if count < 0 {
                return Err(Error::NegativeArrowCount {
                    source_vertex: i,
                    target_vertex: j,
                    count,
                });
            }
            arrows.extend(std::iter::repeat_n((i, j), count as usize));
        }
    }
    Quiver::new(dims.len(), arrows)
}

/// Chain quiver hosting the `n`-dimensional family, with its parameter arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaQuiver {
    pub n: usize,
    pub quiver: Quiver,
    /// Indices into `quiver.arrows()` of the free-parameter arrows, in
    /// parameter order α₁, α₂, ….
    pub parameter_arrows: Vec<usize>,
    /// Arrows with the fixed label 1.
    pub backward_arrows: Vec<usize>,
    /// Whether vertex 0 is the odd-dimension one-dimensional summand.
    pub has_anchor: bool,
}

/// For even `n`: `n/2` vertices, a loop at the first vertex and arrows both
/// ways between consecutive vertices. For odd `n`: an extra leading vertex and
/// no loop. Parameter arrows are the loop (even case) and every forward arrow.
pub fn sigma_quiver(n: usize) -> Result<SigmaQuiver> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!(
            "chain quiver needs n >= 2, got {n}"
        )));
    }
    let k = n / 2;
    let odd = n % 2 == 1;
    let vertices = if odd { k + 1 } else { k };
    let mut arrows = Vec::new();
    let mut parameter_arrows = Vec::new();
    let mut backward_arrows = Vec::new();
    if !odd {
        parameter_arrows.push(arrows.len());
        arrows.push((0, 0));
    }
    for v in 0..vertices.saturating_sub(1) {
        parameter_arrows.push(arrows.len());
        arrows.push((v, v + 1));
        backward_arrows.push(arrows.len());
        arrows.push((v + 1, v));
    }
    debug_assert_eq!(parameter_arrows.len(), k);
    Ok(SigmaQuiver {
        n,
        quiver: Quiver::new(vertices, arrows)?,
        parameter_arrows,
        backward_arrows,
        has_anchor: odd,
    })
}

impl SigmaQuiver {
    pub fn parameter_count(&self) -> usize {
        self.parameter_arrows.len()
    }

    /// Labels the parameter arrows with `params` and backward arrows with `backward`.
    pub fn labeled(&self, params: &[Cyclotomic], backward: &Cyclotomic) -> Result<LabeledQuiver> {
        if params.len() != self.parameter_arrows.len() {
            return Err(Error::InvalidSpec(format!(
                "expected {} arrow scalars, got {}",
                self.parameter_arrows.len(),
                params.len()
            )));
        }
        let mut labels = vec![Cyclotomic::zero(); self.quiver.arrow_count()];
        for (&a, p) in self.parameter_arrows.iter().zip(params) {
            labels[a] = p.clone();
        }
        for &a in &self.backward_arrows {
            labels[a] = backward.clone();
        }
        LabeledQuiver::new(self.quiver.clone(), labels)
    }
}

/// A quiver with one scalar per arrow: a representation of dimension vector 𝟙.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawLabeledQuiver", try_from = "RawLabeledQuiver")]
pub struct LabeledQuiver {
    pub quiver: Quiver,
    pub labels: Vec<Cyclotomic>,
}

// serde's `flatten` cannot carry arbitrary-precision numbers, so the flat
// layout is spelled out.
#[derive(Serialize, Deserialize)]
struct RawLabeledQuiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    labels: Vec<Cyclotomic>,
}

impl From<LabeledQuiver> for RawLabeledQuiver {
    fn from(lq: LabeledQuiver) -> Self {
        Self {
            vertices: lq.quiver.vertex_count,
            arrows: lq.quiver.arrows,
            labels: lq.labels,
        }
    }
}

impl TryFrom<RawLabeledQuiver> for LabeledQuiver {
    type Error = Error;
    fn try_from(raw: RawLabeledQuiver) -> Result<Self> {
        LabeledQuiver::new(Quiver::new(raw.vertices, raw.arrows)?, raw.labels)
    }
}

impl LabeledQuiver {
    pub fn new(quiver: Quiver, labels: Vec<Cyclotomic>) -> Result<Self> {
        if labels.len() != quiver.arrow_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} arrows",
                labels.len(),
                quiver.arrow_count()
            )));
        }
        Ok(Self { quiver, labels })
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        self.quiver
            .arrows()
            .iter()
            .zip(&self.labels)
            .filter(|(_, l)| !l.is_zero())
            .map(|(&a, _)| a)
            .collect()
    }

    /// A representation with all vertex dimensions one is simple exactly when
    /// the arrows with nonzero labels form a strongly connected quiver.
    pub fn onedim_is_simple(&self) -> bool {
        let n = self.quiver.vertex_count();
        let scope: Vec<usize> = (0..n).collect();
        strongly_connected(n, &self.support(), &scope)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn westbury() -> Quiver {
        let mut arrows = Vec::new();
        for a in 0..2 {
            for b in 2..5 {
                arrows.push((a, b));
            }
        }
        Quiver::new(5, arrows).unwrap()
    }

    // αᵀ M β with M written out by hand.
    fn euler_matrix_oracle(a: &[usize], b: &[usize]) -> i64 {
        let m: [[i64; 5]; 5] = [
            [1, 0, -1, -1, -1],
            [0, 1, -1, -1, -1],
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ];
        let mut s = 0;
        for i in 0..5 {
            for j in 0..5 {
                s += a[i] as i64 * m[i][j] * b[j] as i64;
            }
        }
        s
    }

    #[test]
    fn euler_examples() {
        let q = westbury();
        let t2 = [1, 1, 1, 0, 1];
        let t1 = [1, 1, 0, 1, 1];
        let s11 = [1, 0, 1, 0, 0];
        assert_eq!(
            q.euler_form(&t2, &t2).unwrap(),
            euler_matrix_oracle(&t2, &t2)
        );
        assert_eq!(q.euler_form(&t2, &t2).unwrap(), 0);
        assert_eq!(q.euler_form(&s11, &s11).unwrap(), 1);
        assert_eq!(q.euler_form(&t2, &t1).unwrap(), -1);
        assert!(matches!(
            q.euler_form(&[1, 0], &t1),
            Err(Error::DimensionMismatch {
                expected: 5,
                got: 2
            })
        ));
    }

    #[test]
    fn euler_matches_matrix_on_grid() {
        let q = westbury();
        let grid: Vec<Vec<usize>> = (0..4usize.pow(5))
            .map(|mut c| {
                (0..5)
                    .map(|_| {
                        let d = c % 4;
                        c /= 4;
                        d
                    })
                    .collect()
            })
            .collect();
        // all α on the 0..3 grid against a spread of β
        for a in &grid {
            for b in grid.iter().step_by(37) {
                assert_eq!(q.euler_form(a, b).unwrap(), euler_matrix_oracle(a, b));
            }
        }
        let m = q.euler_matrix();
        assert_eq!(m[0], vec![1, 0, -1, -1, -1]);
        assert_eq!(m[1], vec![0, 1, -1, -1, -1]);
    }

    #[test]
    fn arrows_validated() {
        assert!(matches!(
            Quiver::new(2, vec![(0, 2)]),
            Err(Error::ArrowOutOfRange { endpoint: 2, .. })
        ));
    }

    #[test]
    fn strong_connectivity() {
        assert!(Quiver::new(1, vec![]).unwrap().is_strongly_connected(None));
        assert!(!Quiver::new(2, vec![(0, 1)])
            .unwrap()
            .is_strongly_connected(None));
        assert!(Quiver::new(2, vec![(0, 1), (1, 0)])
            .unwrap()
            .is_strongly_connected(None));
        let s6 = sigma_quiver(6).unwrap();
        assert!(s6.quiver.is_strongly_connected(None));
        let chain = Quiver::new(3, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(!chain.is_strongly_connected(None));
        assert!(chain.is_strongly_connected(Some(&[0, 1])));
        assert!(chain.is_strongly_connected(Some(&[2])));
        assert!(!chain.is_strongly_connected(Some(&[0, 2])));
    }

    #[test]
    fn local_quiver_small_cases() {
        let q = westbury();
        let s11 = vec![1, 0, 1, 0, 0];
        let t1 = vec![1, 1, 0, 1, 1];
        let t2 = vec![1, 1, 1, 0, 1];
        let d = local_quiver(&q, &[s11.clone(), t1, t2.clone()]).unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(
            (0..3).map(|v| d.loop_count(v)).collect::<Vec<_>>(),
            vec![0, 1, 1]
        );
        assert_eq!(d.arrows_between(0, 1), 1);
        assert_eq!(d.arrows_between(1, 0), 1);
        assert_eq!(d.arrows_between(1, 2), 1);
        assert_eq!(d.arrows_between(2, 1), 1);
        assert_eq!(d.arrows_between(0, 2), 0);
        assert_eq!(d.arrows_between(2, 0), 0);

        let single = local_quiver(&q, &[t2]).unwrap();
        assert_eq!(single.arrows(), &[(0, 0)]);
        let single = local_quiver(&q, &[s11]).unwrap();
        assert!(single.arrows().is_empty());
    }

    #[test]
    fn local_quiver_rejects_negative_counts() {
        let q = westbury();
        // two copies of a vertex simple at a₁: χ = 1, so 1 − χ = 0 loops but
        // χ between them is 1 and −χ = −1 arrows
        let e = vec![1, 0, 0, 0, 0];
        assert!(matches!(
            local_quiver(&q, &[e.clone(), e]),
            Err(Error::NegativeArrowCount { .. })
        ));
        let big = vec![2, 0, 0, 0, 0];
        assert!(matches!(
            local_quiver(&q, &[big]),
            Err(Error::NegativeArrowCount { .. })
        ));
    }

    #[test]
    fn sigma_shapes() {
        let s6 = sigma_quiver(6).unwrap();
        assert_eq!(s6.quiver.vertex_count(), 3);
        assert_eq!(s6.quiver.loop_count(0), 1);
        assert_eq!(s6.quiver.arrow_count(), 5);
        assert_eq!(s6.quiver.family_dimension(), 3);

        let s7 = sigma_quiver(7).unwrap();
        assert_eq!(s7.quiver.vertex_count(), 4);
        assert_eq!(s7.quiver.arrow_count(), 6);
        assert!((0..4).all(|v| s7.quiver.loop_count(v) == 0));
        assert_eq!(s7.quiver.family_dimension(), 3);

        let s2 = sigma_quiver(2).unwrap();
        assert_eq!(s2.quiver.vertex_count(), 1);
        assert_eq!(s2.quiver.arrows(), &[(0, 0)]);

        assert!(sigma_quiver(1).is_err());
        assert!(sigma_quiver(0).is_err());
        assert_eq!(Quiver::new(1, vec![]).unwrap().family_dimension(), 0);
    }

    #[test]
    fn sigma_family_dimension_is_half_n() {
        for n in 2..=40 {
            let s = sigma_quiver(n).unwrap();
            assert_eq!(s.quiver.family_dimension(), (n / 2) as i64, "n = {n}");
            assert_eq!(s.parameter_count(), n / 2);
        }
    }

    #[test]
    fn sigma_parameter_arrow_layout() {
        let s4 = sigma_quiver(4).unwrap();
        let arrows = s4.quiver.arrows();
        let params: Vec<_> = s4.parameter_arrows.iter().map(|&i| arrows[i]).collect();
        assert_eq!(params, vec![(0, 0), (0, 1)]);
        let back: Vec<_> = s4.backward_arrows.iter().map(|&i| arrows[i]).collect();
        assert_eq!(back, vec![(1, 0)]);

        let s5 = sigma_quiver(5).unwrap();
        let arrows = s5.quiver.arrows();
        let params: Vec<_> = s5.parameter_arrows.iter().map(|&i| arrows[i]).collect();
        assert_eq!(params, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn onedim_simplicity() {
        let one = LabeledQuiver::new(
            Quiver::new(1, vec![(0, 0)]).unwrap(),
            vec![Cyclotomic::zero()],
        )
        .unwrap();
        assert!(one.onedim_is_simple());

        let s4 = sigma_quiver(4).unwrap();
        let z = Cyclotomic::zero();
        let u = Cyclotomic::one();
        let dead = s4.labeled(&[u.clone(), z.clone()], &u).unwrap();
        assert!(!dead.onedim_is_simple());
        let live = s4
            .labeled(&[u.clone(), Cyclotomic::from_int(3)], &u)
            .unwrap();
        assert!(live.onedim_is_simple());
        // loop label is irrelevant to simplicity
        let live = s4.labeled(&[z.clone(), Cyclotomic::omega()], &u).unwrap();
        assert!(live.onedim_is_simple());
    }

    #[test]
    fn quiver_json_format() {
        let q = Quiver::new(2, vec![(0, 1), (1, 1)]).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"vertices":2,"arrows":[[0,1],[1,1]]}"#);
        let lq = LabeledQuiver::new(q, vec![Cyclotomic::one(), Cyclotomic::omega()]).unwrap();
        let s = serde_json::to_string(&lq).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":2,"arrows":[[0,1],[1,1]],"labels":[[1,1,0,1],[0,1,1,1]]}"#
        );
        assert_eq!(serde_json::from_str::<LabeledQuiver>(&s).unwrap(), lq);
    }
}
