use super::cyclotomic::Cyclotomic;

/// Incrementally maintained row-echelon basis of a subspace of Q(ω)^d.
///
/// Every stored row has a unit entry at its pivot and zeros at the pivots of
/// all earlier rows, so reducing against the rows in insertion order is exact.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<(usize, Vec<Cyclotomic>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
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

    pub fn reduce(&self, mut v: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.dim, "vector length");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*p) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Cyclotomic>) -> bool {
        self.reduce(v).iter().all(Cyclotomic::is_zero)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<Cyclotomic>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("leading entry is nonzero");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, v));
        true
    }
}
