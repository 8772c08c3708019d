//! Brute-force reference implementation used to pin expected values.
//!
//! Nothing here calls into `qlab_core`: tables are rebuilt from their numeric
//! definitions, joins and residuals come from scanning the order, and every
//! predicate is evaluated by direct quantification. Results are exchanged with
//! the library by element name.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// A finite commutative unital quantale given by its order and tensor tables.
#[derive(Clone, Debug)]
pub struct Oq {
    pub name: String,
    pub names: Vec<String>,
    le: Vec<Vec<bool>>,
    t: Vec<Vec<usize>>,
    pub unit: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Oq {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn all(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Łukasiewicz chain on `{0, 1/(n-1), ..., 1}`: `a&b = max(0, a+b-1)`.
    pub fn luk(n: usize) -> Oq {
        let d = n - 1;
        let names = (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == d => "1".to_string(),
                i => {
                    let g = gcd(i, d);
                    format!("{}/{}", i / g, d / g)
                }
            })
            .collect();
        Oq {
            name: format!("luk{n}"),
            names,
            le: (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect(),
            t: (0..n).map(|a| (0..n).map(|b| (a + b).saturating_sub(d)).collect()).collect(),
            unit: d,
        }
    }

    /// The chain `0 < 1 < ... < n-1` with `& = min`.
    pub fn chain(n: usize) -> Oq {
        Oq {
            name: format!("chain{n}"),
            names: (0..n).map(|i| i.to_string()).collect(),
            le: (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect(),
            t: (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect(),
            unit: n - 1,
        }
    }

    /// Subsets of a `k`-set as bitmasks, `& = ∩`.
    pub fn boolean(k: usize) -> Oq {
        let n = 1usize << k;
        Oq {
            name: format!("bool{k}"),
            names: (0..n).map(|m| format!("{:0width$b}", m, width = k)).collect(),
            le: (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect(),
            t: (0..n).map(|a| (0..n).map(|b| a & b).collect()).collect(),
            unit: n - 1,
        }
    }

    /// Componentwise product; `(a,b)` sits at index `a*|B| + b`.
    pub fn product(a: &Oq, b: &Oq) -> Oq {
        let (na, nb) = (a.n(), b.n());
        let split = |i: usize| (i / nb, i % nb);
        let n = na * nb;
        let mut names = Vec::new();
        for i in 0..n {
            let (x, y) = split(i);
            names.push(format!("({},{})", a.names[x], b.names[y]));
        }
        Oq {
            name: format!("{}x{}", a.name, b.name),
            names,
            le: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let ((x1, y1), (x2, y2)) = (split(i), split(j));
                            a.le[x1][x2] && b.le[y1][y2]
                        })
                        .collect()
                })
                .collect(),
            t: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let ((x1, y1), (x2, y2)) = (split(i), split(j));
                            a.t[x1][x2] * nb + b.t[y1][y2]
                        })
                        .collect()
                })
                .collect(),
            unit: a.unit * nb + b.unit,
        }
    }

    pub fn from_tables(name: &str, names: &[&str], le: Vec<Vec<bool>>, t: Vec<Vec<usize>>, unit: usize) -> Oq {
        Oq { name: name.into(), names: names.iter().map(|s| s.to_string()).collect(), le, t, unit }
    }

    pub fn idx(&self, name: &str) -> usize {
        self.names.iter().position(|s| s == name).unwrap_or_else(|| panic!("no element {name}"))
    }

    pub fn nm(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn t(&self, a: usize, b: usize) -> usize {
        self.t[a][b]
    }

    /// Least upper bound, found by scanning all upper bounds.
    pub fn join_of(&self, s: &[usize]) -> usize {
        let ubs: Vec<usize> = self.all().filter(|&u| s.iter().all(|&x| self.le(x, u))).collect();
        *ubs.iter().find(|&&u| ubs.iter().all(|&v| self.le(u, v))).expect("lattice has joins")
    }

    pub fn meet_of(&self, s: &[usize]) -> usize {
        let lbs: Vec<usize> = self.all().filter(|&l| s.iter().all(|&x| self.le(l, x))).collect();
        *lbs.iter().find(|&&l| lbs.iter().all(|&v| self.le(v, l))).expect("lattice has meets")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join_of(&[a, b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet_of(&[a, b])
    }

    pub fn bot(&self) -> usize {
        self.join_of(&[])
    }

    pub fn top(&self) -> usize {
        self.meet_of(&[])
    }

    /// `a -> b = join {s | a&s <= b}`.
    pub fn res(&self, a: usize, b: usize) -> usize {
        let s: Vec<usize> = self.all().filter(|&s| self.le(self.t(a, s), b)).collect();
        self.join_of(&s)
    }

    pub fn is_divisible(&self) -> bool {
        self.all().all(|q| self.all().filter(|&u| self.le(u, q)).all(|u| self.t(q, self.res(q, u)) == u))
    }

    /// The four divisibility conditions, each by direct quantification.
    pub fn divisibility_conditions(&self) -> [bool; 4] {
        let below = |q: usize| self.all().filter(move |&u| self.le(u, q));
        let c1 = self.is_divisible();
        let c2 = self.all().all(|q| {
            below(q).all(|u| below(q).all(|v| self.t(v, self.res(q, u)) == self.t(self.res(q, v), u)))
        });
        let c3 = self.all().all(|q| below(q).all(|u| self.all().any(|p| self.t(q, p) == u)));
        let c4 = self.all().all(|p| self.all().all(|q| self.meet(p, q) == self.t(p, self.res(p, q))));
        [c1, c2, c3, c4]
    }

    pub fn is_frame(&self) -> bool {
        self.all().all(|a| self.all().all(|b| self.t(a, b) == self.meet(a, b)))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.all().filter(|&a| self.t(a, a) == a).collect()
    }

    /// `p ⊑ q` iff `p <= q` and `p & (q -> p) = p`.
    pub fn sq(&self, p: usize, q: usize) -> bool {
        self.le(p, q) && self.t(p, self.res(q, p)) == p
    }

    pub fn c(&self, q: usize) -> Vec<usize> {
        self.all().filter(|&p| self.sq(p, q)).collect()
    }

    /// `⊓A = join {r | r ⊑ a for all a in A}`.
    pub fn sqcap(&self, a: &[usize]) -> usize {
        let lbs: Vec<usize> = self.all().filter(|&r| a.iter().all(|&x| self.sq(r, x))).collect();
        self.join_of(&lbs)
    }

    /// `v ∘_q u = v & (q -> u)`.
    pub fn circ(&self, q: usize, v: usize, u: usize) -> usize {
        self.t(v, self.res(q, u))
    }

    /// The `<=`-minimal non-idempotents, first in index order.
    pub fn least_non_idempotent(&self) -> Option<usize> {
        let ni: Vec<usize> = self.all().filter(|&a| self.t(a, a) != a).collect();
        ni.iter().copied().find(|&a| !ni.iter().any(|&b| b != a && self.le(b, a)))
    }

    pub fn set_names(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&i| self.names[i].clone()).collect()
    }
}

/// A Q-set as a plain matrix of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Oset {
    pub a: Vec<Vec<usize>>,
}

impl Oset {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn ty(&self, x: usize) -> usize {
        self.a[x][x]
    }

    /// `(S,∧)` for a subset `S` of the quantale.
    pub fn meets(q: &Oq, s: &[usize]) -> Oset {
        Oset { a: s.iter().map(|&x| s.iter().map(|&y| q.meet(x, y)).collect()).collect() }
    }

    pub fn point(p: usize) -> Oset {
        Oset { a: vec![vec![p]] }
    }

    pub fn is_valid(&self, q: &Oq) -> bool {
        let n = self.n();
        let r = 0..n;
        r.clone().all(|x| {
            r.clone().all(|y| {
                q.le(self.a[x][y], q.meet(self.ty(x), self.ty(y)))
                    && self.a[x][y] == self.a[y][x]
                    && r.clone().all(|z| q.le(q.t(self.a[y][z], q.res(self.ty(y), self.a[x][y])), self.a[x][z]))
            })
        })
    }

    /// No two distinct elements with `α(x,x) = α(x,y) = α(y,y)`.
    pub fn is_separated(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.a[x][y] == self.ty(x) && self.a[x][y] == self.ty(y))))
    }

    pub fn row(&self, x: usize) -> Vec<usize> {
        self.a[x].clone()
    }
}

/// Every valid Q-set on `k` points, as a sorted list of matrices.
pub fn all_qsets(q: &Oq, k: usize) -> Vec<Oset> {
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|x| (x..k).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for code in tuples(q.n(), cells.len()) {
        let mut a = vec![vec![0; k]; k];
        for (&(x, y), &v) in cells.iter().zip(&code) {
            a[x][y] = v;
            a[y][x] = v;
        }
        let s = Oset { a };
        if s.is_valid(q) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// All vectors in `{0..base}^len`.
pub fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..base).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// ss1–ss4 on an arbitrary map `μ: X -> Q`.
pub fn is_singleton(q: &Oq, x: &Oset, mu: &[usize]) -> bool {
    let n = x.n();
    let ext = q.join_of(mu);
    let ss1 = (0..n).all(|i| q.le(mu[i], x.ty(i)));
    let ss2 = (0..n).all(|i| (0..n).all(|j| q.le(q.t(mu[i], q.res(x.ty(i), x.a[i][j])), mu[j])));
    let cover: Vec<usize> = (0..n).map(|i| q.t(mu[i], q.res(x.ty(i), mu[i]))).collect();
    let ss3 = q.le(ext, q.join_of(&cover));
    let ss4 = (0..n).all(|i| (0..n).all(|j| q.le(q.t(mu[i], q.res(ext, mu[j])), x.a[i][j])));
    ss1 && ss2 && ss3 && ss4
}

/// Singletons by exhaustive search over all of `Q^X`, sorted.
pub fn singletons(q: &Oq, x: &Oset) -> Vec<Vec<usize>> {
    tuples(q.n(), x.n()).into_iter().filter(|mu| is_singleton(q, x, mu)).collect()
}

/// Left adjoint distributors `φ: {p} ⇸ X` with their right adjoints, found by
/// brute force over both sides. Returned as `(p, φ, ψ)`.
pub fn left_adjoints(q: &Oq, x: &Oset) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
    let n = x.n();
    let mut out = Vec::new();
    for p in q.all() {
        let fits = |v: &[usize]| (0..n).all(|i| q.le(v[i], q.meet(p, x.ty(i))));
        let cands: Vec<Vec<usize>> = tuples(q.n(), n).into_iter().filter(|v| fits(v)).collect();
        // φ(x) ∈ hom(p,|x|); X acts by α(y,x) ∘_{|x|} φ(x) <= φ(y).
        let left: Vec<&Vec<usize>> = cands
            .iter()
            .filter(|phi| (0..n).all(|i| (0..n).all(|j| q.le(q.circ(x.ty(i), x.a[j][i], phi[i]), phi[j]))))
            .collect();
        // ψ(x) ∈ hom(|x|,p); ψ(x) ∘_{|x|} α(x,y) <= ψ(y).
        let right: Vec<&Vec<usize>> = cands
            .iter()
            .filter(|psi| (0..n).all(|i| (0..n).all(|j| q.le(q.circ(x.ty(i), psi[i], x.a[i][j]), psi[j]))))
            .collect();
        for phi in &left {
            for psi in &right {
                let unit: Vec<usize> = (0..n).map(|i| q.circ(x.ty(i), psi[i], phi[i])).collect();
                let unit_ok = q.le(p, q.join_of(&unit));
                let counit_ok = (0..n).all(|i| (0..n).all(|j| q.le(q.circ(p, phi[j], psi[i]), x.a[j][i])));
                if unit_ok && counit_ok {
                    out.push((p, phi.to_vec(), psi.to_vec()));
                }
            }
        }
    }
    out
}

/// `α̂(μ,λ)` as the residual `λ↘μ` in the quantaloid of downsets:
/// the largest `w <= |μ|∧|λ|` with `λ(x) ∘_{|λ|} w <= μ(x)` for all `x`.
pub fn completion_hom(q: &Oq, mu: &[usize], la: &[usize]) -> usize {
    let (em, el) = (q.join_of(mu), q.join_of(la));
    let bound = q.meet(em, el);
    let ok: Vec<usize> = q
        .all()
        .filter(|&w| q.le(w, bound) && mu.iter().zip(la).all(|(&m, &l)| q.le(q.circ(el, l, w), m)))
        .collect();
    q.join_of(&ok)
}

pub struct Ocompletion {
    pub singletons: Vec<Vec<usize>>,
    pub set: Oset,
}

pub fn completion(q: &Oq, x: &Oset) -> Ocompletion {
    let ss = singletons(q, x);
    let a = ss.iter().map(|m| ss.iter().map(|l| completion_hom(q, m, l)).collect()).collect();
    Ocompletion { singletons: ss, set: Oset { a } }
}

pub fn is_cauchy_complete(q: &Oq, x: &Oset) -> bool {
    singletons(q, x).iter().all(|mu| (0..x.n()).any(|i| x.a[i] == *mu))
}

/// Whether two Q-sets are isomorphic, by trying every bijection.
pub fn isomorphic(a: &Oset, b: &Oset) -> bool {
    if a.n() != b.n() {
        return false;
    }
    permutations(a.n()).iter().any(|p| (0..a.n()).all(|i| (0..a.n()).all(|j| a.a[i][j] == b.a[p[i]][p[j]])))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Subsets `S ⊆ C_q` with `(S,∧)` Cauchy complete, as sorted element lists.
pub fn cc_subsets_of_c(q: &Oq, r: usize) -> BTreeSet<Vec<usize>> {
    let c = q.c(r);
    let mut out = BTreeSet::new();
    for mask in 0..(1usize << c.len()) {
        let s: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect();
        if is_cauchy_complete(q, &Oset::meets(q, &s)) {
            out.insert(s);
        }
    }
    out
}

/// The span object `Z = {p, r}` with `γ(p,r) = p⊓r`.
pub fn span(q: &Oq, p: usize, r: usize) -> Oset {
    let m = q.sqcap(&[p, r]);
    Oset { a: vec![vec![p, m], vec![m, r]] }
}
