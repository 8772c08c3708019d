//! Categories and distributors enriched in a finite quantaloid.

use crate::error::{Error, Result};
use crate::quantaloid::{Arrow, FiniteQuantaloid};
use crate::report::WitnessReport;

/// A category enriched in `base`: objects `x` with types `|x|` and homs
/// `α(x,y) ∈ hom(|x|, |y|)`.
#[derive(Clone, Debug)]
pub struct QCategory<'k> {
    base: &'k FiniteQuantaloid,
    names: Vec<String>,
    types: Vec<usize>,
    hom: Vec<Arrow>,
}

impl<'k> QCategory<'k> {
    pub fn new(base: &'k FiniteQuantaloid, names: Vec<String>, types: Vec<usize>, hom: Vec<Arrow>) -> Result<Self> {
        let n = types.len();
        if names.len() != n || hom.len() != n * n {
            return Err(Error::Malformed("category tables do not match carrier size".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let a = hom[x * n + y];
                if a.src != types[x] || a.tgt != types[y] {
                    return Err(Error::TypeMismatch(format!(
                        "hom({},{}) is {} but should go {} -> {}",
                        names[x],
                        names[y],
                        base.show(a),
                        base.object_name(types[x]),
                        base.object_name(types[y])
                    )));
                }
            }
        }
        Ok(QCategory { base, names, types, hom })
    }

    /// The one-object category `{p}` with hom `1_p`.
    pub fn point(base: &'k FiniteQuantaloid, p: usize) -> Self {
        QCategory {
            base,
            names: vec![base.object_name(p).to_string()],
            types: vec![p],
            hom: vec![base.identity(p)],
        }
    }

    pub fn base(&self) -> &'k FiniteQuantaloid {
        self.base
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn hom(&self, x: usize, y: usize) -> Arrow {
        self.hom[x * self.len() + y]
    }

    /// The identity distributor, whose matrix is the hom itself.
    pub fn identity(&self) -> Distributor {
        Distributor { dom: self.types.clone(), cod: self.types.clone(), m: self.hom.clone() }
    }

    /// `1_{|x|} <= α(x,x)` and `α(y,z)∘α(x,y) <= α(x,z)`.
    pub fn validate(&self) -> Vec<WitnessReport> {
        let k = self.base;
        let n = self.len();
        let mut unit = WitnessReport::new("category-unit", k.name(), "1_{|x|} <= α(x,x)");
        for x in 0..n {
            if !k.leq(k.identity(self.types[x]), self.hom(x, x)) {
                unit.fail();
                unit.push("x", &self.names[x]);
                break;
            }
        }
        let mut comp = WitnessReport::new("category-composition", k.name(), "α(y,z)∘α(x,y) <= α(x,z)");
        'c: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !k.leq(k.compose_unchecked(self.hom(y, z), self.hom(x, y)), self.hom(x, z)) {
                        comp.fail();
                        comp.push("x", &self.names[x]);
                        comp.push("y", &self.names[y]);
                        comp.push("z", &self.names[z]);
                        break 'c;
                    }
                }
            }
        }
        vec![unit, comp]
    }

    pub fn is_valid(&self) -> bool {
        self.validate().iter().all(WitnessReport::passed)
    }

    /// `α(x,y) = α(y,x)°` for all `x, y`; false when the base has no involution.
    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.base.involution(self.hom(y, x)) == Some(self.hom(x, y))))
    }

    /// The underlying preorder `x <= y iff |x| = |y| and 1_{|x|} <= α(x,y)` is antisymmetric.
    pub fn is_separated(&self) -> bool {
        let n = self.len();
        let below = |x: usize, y: usize| {
            self.types[x] == self.types[y] && self.base.leq(self.base.identity(self.types[x]), self.hom(x, y))
        };
        (0..n).all(|x| (0..n).all(|y| x == y || !(below(x, y) && below(y, x))))
    }
}

/// A matrix `φ(x,y) ∈ hom(|x|,|y|)` between typed carriers, read `dom ⇸ cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distributor {
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub m: Vec<Arrow>,
}

impl Distributor {
    pub fn new(k: &FiniteQuantaloid, dom: Vec<usize>, cod: Vec<usize>, m: Vec<Arrow>) -> Result<Self> {
        if m.len() != dom.len() * cod.len() {
            return Err(Error::Malformed("distributor matrix has the wrong size".into()));
        }
        for (i, a) in m.iter().enumerate() {
            let (x, y) = (i / cod.len().max(1), i % cod.len().max(1));
            if a.src != dom[x] || a.tgt != cod[y] || a.idx >= k.hom(a.src, a.tgt).lattice.len() {
                return Err(Error::TypeMismatch(format!("distributor entry ({x},{y}) is mistyped")));
            }
        }
        Ok(Distributor { dom, cod, m })
    }

    pub fn at(&self, x: usize, y: usize) -> Arrow {
        self.m[x * self.cod.len() + y]
    }

    pub fn bottom(k: &FiniteQuantaloid, dom: &[usize], cod: &[usize]) -> Self {
        let m = dom.iter().flat_map(|&p| cod.iter().map(move |&q| k.bottom(p, q))).collect();
        Distributor { dom: dom.to_vec(), cod: cod.to_vec(), m }
    }

    /// Pointwise order; false when the endpoints differ.
    pub fn leq(&self, k: &FiniteQuantaloid, other: &Distributor) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.m.iter().zip(&other.m).all(|(&a, &b)| k.leq(a, b))
    }

    /// `β(y,y')∘φ(x,y)∘α(x',x) <= φ(x',y')` for all indices.
    pub fn is_distributor_between(&self, k: &FiniteQuantaloid, x: &QCategory<'_>, y: &QCategory<'_>) -> bool {
        if self.dom != x.types() || self.cod != y.types() {
            return false;
        }
        let (nx, ny) = (x.len(), y.len());
        (0..nx).all(|a| {
            (0..nx).all(|a2| {
                (0..ny).all(|b| {
                    (0..ny).all(|b2| {
                        let c = k.compose_unchecked(y.hom(b, b2), k.compose_unchecked(self.at(a, b), x.hom(a2, a)));
                        k.leq(c, self.at(a2, b2))
                    })
                })
            })
        })
    }
}

/// `(ψ∘φ)(x,z) = join_y ψ(y,z)∘φ(x,y)` for `φ: X ⇸ Y`, `ψ: Y ⇸ Z`.
pub fn dist_compose(k: &FiniteQuantaloid, psi: &Distributor, phi: &Distributor) -> Result<Distributor> {
    if phi.cod != psi.dom {
        return Err(Error::TypeMismatch("dist_compose: middle carriers differ".into()));
    }
    let mut m = Vec::with_capacity(phi.dom.len() * psi.cod.len());
    for x in 0..phi.dom.len() {
        for z in 0..psi.cod.len() {
            let terms = (0..phi.cod.len()).map(|y| k.compose_unchecked(psi.at(y, z), phi.at(x, y)));
            m.push(k.join_all(phi.dom[x], psi.cod[z], terms));
        }
    }
    Ok(Distributor { dom: phi.dom.clone(), cod: psi.cod.clone(), m })
}

/// `(ξ↙φ)(y,z) = meet_x ξ(x,z)↙φ(x,y)` for `φ: X ⇸ Y`, `ξ: X ⇸ Z`; result `Y ⇸ Z`.
pub fn dist_lres(k: &FiniteQuantaloid, xi: &Distributor, phi: &Distributor) -> Result<Distributor> {
    if xi.dom != phi.dom {
        return Err(Error::TypeMismatch("dist_lres: domains differ".into()));
    }
    let mut m = Vec::with_capacity(phi.cod.len() * xi.cod.len());
    for y in 0..phi.cod.len() {
        for z in 0..xi.cod.len() {
            let mut acc = k.top(phi.cod[y], xi.cod[z]);
            for x in 0..phi.dom.len() {
                acc = k.meet(acc, k.lres(xi.at(x, z), phi.at(x, y))?);
            }
            m.push(acc);
        }
    }
    Ok(Distributor { dom: phi.cod.clone(), cod: xi.cod.clone(), m })
}

/// `(ψ↘ξ)(x,y) = meet_z ψ(y,z)↘ξ(x,z)` for `ψ: Y ⇸ Z`, `ξ: X ⇸ Z`; result `X ⇸ Y`.
pub fn dist_rres(k: &FiniteQuantaloid, psi: &Distributor, xi: &Distributor) -> Result<Distributor> {
    if xi.cod != psi.cod {
        return Err(Error::TypeMismatch("dist_rres: codomains differ".into()));
    }
    let mut m = Vec::with_capacity(xi.dom.len() * psi.dom.len());
    for x in 0..xi.dom.len() {
        for y in 0..psi.dom.len() {
            let mut acc = k.top(xi.dom[x], psi.dom[y]);
            for z in 0..xi.cod.len() {
                acc = k.meet(acc, k.rres(psi.at(y, z), xi.at(x, z))?);
            }
            m.push(acc);
        }
    }
    Ok(Distributor { dom: xi.dom.clone(), cod: psi.dom.clone(), m })
}

fn adjunction_holds(k: &FiniteQuantaloid, phi: &Distributor, psi: &Distributor, x: &QCategory<'_>, y: &QCategory<'_>) -> bool {
    let unit = dist_compose(k, psi, phi).expect("endpoints agree");
    let counit = dist_compose(k, phi, psi).expect("endpoints agree");
    x.identity().leq(k, &unit) && counit.leq(k, &y.identity())
}

/// The right adjoint of `φ: X ⇸ Y`, if any. The candidate is `φ ↘ β` with `β`
/// the identity distributor of the codomain.
pub fn right_adjoint(k: &FiniteQuantaloid, phi: &Distributor, x: &QCategory<'_>, y: &QCategory<'_>) -> Option<Distributor> {
    let cand = dist_rres(k, phi, &y.identity()).ok()?;
    adjunction_holds(k, phi, &cand, x, y).then_some(cand)
}

/// All right adjoints of `φ: X ⇸ Y` among distributors `Y ⇸ X`, by exhaustive
/// search. Only feasible for tiny carriers.
pub fn right_adjoints_exhaustive(
    k: &FiniteQuantaloid,
    phi: &Distributor,
    x: &QCategory<'_>,
    y: &QCategory<'_>,
) -> Vec<Distributor> {
    let (dom, cod) = (y.types().to_vec(), x.types().to_vec());
    let sizes: Vec<usize> = dom
        .iter()
        .flat_map(|&p| cod.iter().map(move |&q| (p, q)))
        .map(|(p, q)| k.hom(p, q).lattice.len())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; sizes.len()];
    loop {
        let m: Vec<Arrow> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| Arrow { src: dom[i / cod.len()], tgt: cod[i % cod.len()], idx: j })
            .collect();
        let psi = Distributor { dom: dom.clone(), cod: cod.clone(), m };
        if psi.is_distributor_between(k, y, x) && adjunction_holds(k, phi, &psi, x, y) {
            out.push(psi);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == idx.len() {
                return out;
            }
            idx[i] += 1;
            if idx[i] < sizes[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// The adjunction triple `ψ∘φ <= ξ  iff  ψ <= ξ↙φ  iff  φ <= ψ↘ξ`.
pub fn adjunction_triple_holds(k: &FiniteQuantaloid, psi: &Distributor, phi: &Distributor, xi: &Distributor) -> Result<bool> {
    let a = dist_compose(k, psi, phi)?.leq(k, xi);
    let b = psi.leq(k, &dist_lres(k, xi, phi)?);
    let c = phi.leq(k, &dist_rres(k, psi, xi)?);
    Ok(a == b && b == c)
}
