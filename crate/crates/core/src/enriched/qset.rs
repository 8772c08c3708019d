//! Q-sets: maps `α: X×X -> Q` satisfying S1–S3, viewed as symmetric `DQ`-categories.

use crate::divisible::tuple;
use crate::enriched::category::QCategory;
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::quantale::Quantale;
use crate::quantaloid::FiniteQuantaloid;
use crate::report::WitnessReport;
use crate::text::{qset_to_text, QSetFile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSet<'q> {
    q: &'q Quantale,
    name: String,
    names: Vec<String>,
    alpha: Vec<Elem>,
}

impl<'q> QSet<'q> {
    /// Checks shapes only; use [`QSet::validate`] for the axioms.
    pub fn new(q: &'q Quantale, name: impl Into<String>, names: Vec<String>, alpha: Vec<Elem>) -> Result<Self> {
        if alpha.len() != names.len() * names.len() {
            return Err(Error::Malformed(format!(
                "hom matrix has {} entries for {} elements",
                alpha.len(),
                names.len()
            )));
        }
        if let Some(bad) = alpha.iter().find(|e| e.index() >= q.len()) {
            return Err(Error::InvalidElement(bad.index()));
        }
        Ok(QSet { q, name: name.into(), names, alpha })
    }

    pub fn from_file(q: &'q Quantale, file: &QSetFile) -> Result<Self> {
        let alpha = file.resolve(q)?;
        Self::new(q, file.name.clone(), file.elements.clone(), alpha)
    }

    /// The one-element Q-set `{p}`.
    pub fn point(q: &'q Quantale, p: Elem) -> Self {
        QSet { q, name: format!("{{{}}}", q.show(p)), names: vec![q.show(p).to_string()], alpha: vec![p] }
    }

    /// `(S, ∧)` for a subset `S` of `Q`, keeping the given order.
    pub fn meet_on(q: &'q Quantale, name: impl Into<String>, subset: &[Elem]) -> Self {
        let names = subset.iter().map(|&e| q.show(e).to_string()).collect();
        let alpha = subset.iter().flat_map(|&a| subset.iter().map(move |&b| q.meet(a, b))).collect();
        QSet { q, name: name.into(), names, alpha }
    }

    /// The terminal Q-set `(Q, ∧)`.
    pub fn terminal(q: &'q Quantale) -> Self {
        let all: Vec<Elem> = q.elements().collect();
        Self::meet_on(q, format!("({},∧)", q.name()), &all)
    }

    pub fn quantale(&self) -> &'q Quantale {
        self.q
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn alpha(&self, x: usize, y: usize) -> Elem {
        self.alpha[x * self.names.len() + y]
    }

    /// `|x| = α(x,x)`.
    #[inline]
    pub fn ty(&self, x: usize) -> Elem {
        self.alpha(x, x)
    }

    pub fn matrix(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Sub-Q-set on the given indices, with the restricted hom.
    pub fn restrict_to(&self, idx: &[usize], name: impl Into<String>) -> Self {
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let alpha = idx.iter().flat_map(|&a| idx.iter().map(move |&b| self.alpha(a, b))).collect();
        QSet { q: self.q, name: name.into(), names, alpha }
    }

    fn triple(&self, xs: &[usize]) -> String {
        let parts: Vec<&str> = xs.iter().map(|&i| self.names[i].as_str()).collect();
        format!("({})", parts.join(","))
    }

    /// S1 `α(x,y) <= α(x,x)∧α(y,y)`, S2 `α(x,y) = α(y,x)`,
    /// S3 `α(y,z)&(α(y,y)->α(x,y)) <= α(x,z)`.
    pub fn validate(&self) -> Vec<WitnessReport> {
        let q = self.q;
        let n = self.len();
        let mut s1 = WitnessReport::new("S1", &self.name, "α(x,y) <= α(x,x)∧α(y,y)");
        'a: for x in 0..n {
            for y in 0..n {
                if !q.leq(self.alpha(x, y), q.meet(self.ty(x), self.ty(y))) {
                    s1.fail();
                    s1.push("(x,y)", self.triple(&[x, y]));
                    s1.push("α(x,y)", q.show(self.alpha(x, y)));
                    break 'a;
                }
            }
        }
        let mut s2 = WitnessReport::new("S2", &self.name, "α(x,y) = α(y,x)");
        'b: for x in 0..n {
            for y in x + 1..n {
                if self.alpha(x, y) != self.alpha(y, x) {
                    s2.fail();
                    s2.push("(x,y)", self.triple(&[x, y]));
                    s2.push("values", tuple(q, &[self.alpha(x, y), self.alpha(y, x)]));
                    break 'b;
                }
            }
        }
        let mut s3 = WitnessReport::new("S3", &self.name, "α(y,z)&(α(y,y)->α(x,y)) <= α(x,z)");
        'c: for x in 0..n {
            for y in 0..n {
                let r = q.residual(self.ty(y), self.alpha(x, y));
                for z in 0..n {
                    let lhs = q.tensor(self.alpha(y, z), r);
                    if !q.leq(lhs, self.alpha(x, z)) {
                        s3.fail();
                        s3.push("(x,y,z)", self.triple(&[x, y, z]));
                        s3.push("lhs", q.show(lhs));
                        s3.push("α(x,z)", q.show(self.alpha(x, z)));
                        break 'c;
                    }
                }
            }
        }
        vec![s1, s2, s3]
    }

    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(WitnessReport::passed)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.alpha(x, y) == self.alpha(y, x)))
    }

    /// A pair `x != y` with `α(x,y) = |x| = |y|`, if any.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                let t = self.ty(x);
                if self.ty(y) == t && self.alpha(x, y) == t && self.alpha(y, x) == t {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    /// The `DQ`-category with `|x| = α(x,x)`.
    pub fn to_category<'k>(&self, dq: &'k FiniteQuantaloid) -> Result<QCategory<'k>> {
        if !dq.is_dq() || dq.object_count() != self.q.len() {
            return Err(Error::Precondition("to_category needs DQ of the Q-set's quantale".into()));
        }
        let n = self.len();
        let types: Vec<usize> = (0..n).map(|x| self.ty(x).index()).collect();
        let mut hom = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = dq.dq_arrow(self.ty(x), self.ty(y), self.alpha(x, y)).ok_or_else(|| {
                    Error::Domain(format!(
                        "α({},{}) = {} is not below |x|∧|y|",
                        self.names[x],
                        self.names[y],
                        self.q.show(self.alpha(x, y))
                    ))
                })?;
                hom.push(a);
            }
        }
        QCategory::new(dq, self.names.clone(), types, hom)
    }

    pub fn to_text(&self) -> String {
        qset_to_text(&self.name, self.q, &self.names, &self.alpha)
    }

    /// The hom matrix rendered row by row with element names.
    pub fn matrix_rows(&self) -> Vec<String> {
        let n = self.len();
        (0..n)
            .map(|x| (0..n).map(|y| self.q.show(self.alpha(x, y))).collect::<Vec<_>>().join(" "))
            .collect()
    }
}

/// Every valid Q-set on the carrier `x1..xk`, in lexicographic order of the
/// upper-triangular hom entries (diagonal first).
pub fn enumerate_qsets(q: &Quantale, k: usize) -> Vec<QSet<'_>> {
    let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let mut out = Vec::new();
    let mut diag = vec![q.bottom(); k];
    enumerate_diag(q, &names, &mut diag, 0, &mut out);
    out
}

fn enumerate_diag<'q>(q: &'q Quantale, names: &[String], diag: &mut Vec<Elem>, i: usize, out: &mut Vec<QSet<'q>>) {
    let k = names.len();
    if i == k {
        let mut alpha = vec![q.bottom(); k * k];
        for (x, &d) in diag.iter().enumerate() {
            alpha[x * k + x] = d;
        }
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect();
        enumerate_off(q, names, &pairs, 0, &mut alpha, out);
        return;
    }
    for e in q.elements() {
        diag[i] = e;
        enumerate_diag(q, names, diag, i + 1, out);
    }
}

fn enumerate_off<'q>(
    q: &'q Quantale,
    names: &[String],
    pairs: &[(usize, usize)],
    i: usize,
    alpha: &mut Vec<Elem>,
    out: &mut Vec<QSet<'q>>,
) {
    let k = names.len();
    if i == pairs.len() {
        let x = QSet { q, name: String::new(), names: names.to_vec(), alpha: alpha.clone() };
        if x.is_valid() {
            let name = format!("X{}", out.len());
            out.push(x.renamed(name));
        }
        return;
    }
    let (x, y) = pairs[i];
    let bound = q.meet(alpha[x * k + x], alpha[y * k + y]);
    for e in q.elements().filter(|&e| q.leq(e, bound)) {
        alpha[x * k + y] = e;
        alpha[y * k + x] = e;
        enumerate_off(q, names, pairs, i + 1, alpha, out);
    }
}
