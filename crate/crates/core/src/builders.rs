//! Standard finite quantales: chains, Boolean algebras, Łukasiewicz chains and products.

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;

fn meet_table(l: &FiniteLattice) -> Vec<Elem> {
    let mut t = Vec::with_capacity(l.len() * l.len());
    for a in l.elements() {
        for b in l.elements() {
            t.push(l.meet(a, b));
        }
    }
    t
}

/// The frame `({0 < 1 < ... < n-1}, min)`, named `chain<n>`.
pub fn chain_frame(n: usize) -> Result<Quantale> {
    if n == 0 {
        return Err(Error::Precondition("chain_frame needs n >= 1".into()));
    }
    let l = FiniteLattice::chain(n)?;
    let names = (0..n).map(|i| i.to_string()).collect();
    let t = meet_table(&l);
    let top = l.top();
    Quantale::new(format!("chain{n}"), names, l, t, top)
}

/// The Boolean algebra of subsets of a `k`-element set, as a frame. Element ids are
/// bitmasks; names are the bitstrings (most significant bit first).
pub fn boolean_frame(k: usize) -> Result<Quantale> {
    if k >= 16 {
        return Err(Error::Precondition("boolean_frame supports k < 16".into()));
    }
    let n = 1usize << k;
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = a & !b == 0;
        }
    }
    let l = FiniteLattice::from_order(n, leq)?;
    let names = (0..n)
        .map(|m| if k == 0 { "0".to_string() } else { format!("{:0width$b}", m, width = k) })
        .collect();
    let t = meet_table(&l);
    let top = l.top();
    Quantale::new(format!("bool{k}"), names, l, t, top)
}

/// The `n`-element Łukasiewicz chain: `i & j = max(0, i + j - (n-1))`, unit `n-1`.
/// Elements are named by the fractions `i/(n-1)` in lowest terms.
pub fn lukasiewicz_chain(n: usize) -> Result<Quantale> {
    if n == 0 {
        return Err(Error::Precondition("lukasiewicz_chain needs n >= 1".into()));
    }
    let l = FiniteLattice::chain(n)?;
    let d = n - 1;
    let names = (0..n).map(|i| fraction_name(i, d)).collect();
    let mut t = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            t.push(Elem::new((i + j).saturating_sub(d)));
        }
    }
    Quantale::new(format!("luk{n}"), names, l, t, Elem::new(d))
}

fn fraction_name(i: usize, d: usize) -> String {
    if i == 0 {
        return "0".into();
    }
    if i == d {
        return "1".into();
    }
    let g = gcd(i, d);
    format!("{}/{}", i / g, d / g)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Componentwise product. Element `(a, b)` has id `a * |Q2| + b` and name `(a,b)`.
pub fn product(q1: &Quantale, q2: &Quantale) -> Result<Quantale> {
    let l = q1.lattice().product(q2.lattice());
    let n2 = q2.len();
    let mut names = Vec::with_capacity(l.len());
    for a in q1.elements() {
        for b in q2.elements() {
            names.push(format!("({},{})", q1.show(a), q2.show(b)));
        }
    }
    let split = |x: Elem| (Elem::new(x.index() / n2), Elem::new(x.index() % n2));
    let mut t = Vec::with_capacity(l.len() * l.len());
    for x in l.elements() {
        for y in l.elements() {
            let ((a1, b1), (a2, b2)) = (split(x), split(y));
            t.push(Elem::new(q1.tensor(a1, a2).index() * n2 + q2.tensor(b1, b2).index()));
        }
    }
    let unit = Elem::new(q1.unit().index() * n2 + q2.unit().index());
    Quantale::new(format!("{}x{}", q1.name(), q2.name()), names, l, t, unit)
}

/// Resolves a builder expression such as `luk3`, `chain2`, `bool3` or a product
/// `luk3xchain2` (factors separated by `x`, left-associated).
pub fn from_builder_name(expr: &str) -> Result<Quantale> {
    let mut acc: Option<Quantale> = None;
    for factor in expr.split('x') {
        let q = builder_factor(factor)
            .ok_or_else(|| Error::Malformed(format!("unknown quantale builder `{expr}`")))??;
        acc = Some(match acc {
            None => q,
            Some(prev) => product(&prev, &q)?,
        });
    }
    acc.ok_or_else(|| Error::Malformed(format!("empty builder expression `{expr}`")))
}

fn builder_factor(s: &str) -> Option<Result<Quantale>> {
    let split = s.find(|c: char| c.is_ascii_digit())?;
    let (kind, num) = s.split_at(split);
    let n: usize = num.parse().ok()?;
    match kind {
        "luk" => Some(lukasiewicz_chain(n)),
        "chain" => Some(chain_frame(n)),
        "bool" => Some(boolean_frame(n)),
        _ => None,
    }
}
