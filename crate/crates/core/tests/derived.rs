//! Pinned example values. Each expectation is first confirmed by the
//! brute-force oracle, then required of the library.

mod oracle;

use std::collections::BTreeSet;

use oracle::{Oq, Oset};
use qlab_core::builders::{boolean_frame, chain_frame, from_builder_name};
use qlab_core::divisible::{
    circ, divisibility, downset_quantale, idempotents, is_frame, meet_via_residual, relative_idempotents,
};
use qlab_core::enriched::completion::{cauchy_completion, is_cauchy_complete};
use qlab_core::enriched::functor::{cq_functor_exists, restrict_element};
use qlab_core::enriched::{singletons, QSet};
use qlab_core::quantaloid::build_dq;
use qlab_core::sqleq::build_sqleq;
use qlab_core::text::parse_quantale;
use qlab_core::topos::{
    cc_subobjects_of_cq, embedding_check, frame_equivalence_check, probe_corpus, pullback_check,
    span_pushout_object, topos_witness,
};
use qlab_core::{Elem, Quantale};

fn lib(name: &str) -> Quantale {
    from_builder_name(name).unwrap()
}

fn names(q: &Quantale, s: &[Elem]) -> Vec<String> {
    s.iter().map(|&e| q.show(e).to_string()).collect()
}

fn strs(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

/// The oracle's view of a library quantale, rebuilt from its order and tensor only.
fn mirror(q: &Quantale) -> Oq {
    let n = q.len();
    let e = Elem::new;
    let le = (0..n).map(|a| (0..n).map(|b| q.leq(e(a), e(b))).collect()).collect();
    let t = (0..n).map(|a| (0..n).map(|b| q.tensor(e(a), e(b)).index()).collect()).collect();
    let nm: Vec<&str> = q.names().iter().map(String::as_str).collect();
    Oq::from_tables(q.name(), &nm, le, t, q.unit().index())
}

fn oset(x: &QSet<'_>) -> Oset {
    let n = x.len();
    Oset { a: (0..n).map(|i| (0..n).map(|j| x.alpha(i, j).index()).collect()).collect() }
}

#[test]
fn oracle_tables_match_builders() {
    for (o, l) in [
        (Oq::luk(3), lib("luk3")),
        (Oq::luk(6), lib("luk6")),
        (Oq::chain(3), chain_frame(3).unwrap()),
        (Oq::boolean(2), boolean_frame(2).unwrap()),
        (Oq::product(&Oq::luk(3), &Oq::chain(2)), lib("luk3xchain2")),
    ] {
        assert_eq!(o.names, l.names());
        assert_eq!(o.unit, l.unit().index());
        for a in o.all() {
            for b in o.all() {
                let (ea, eb) = (Elem::new(a), Elem::new(b));
                assert_eq!(o.le(a, b), l.leq(ea, eb));
                assert_eq!(o.t(a, b), l.tensor(ea, eb).index());
                assert_eq!(o.res(a, b), l.residual(ea, eb).index());
            }
        }
    }
}

#[test]
fn l3_residuals_and_divisibility() {
    let o = Oq::luk(3);
    let (h, one, zero) = (o.idx("1/2"), o.idx("1"), o.idx("0"));
    assert_eq!(o.res(one, h), h);
    assert_eq!(o.res(h, zero), h);
    assert_eq!(o.divisibility_conditions(), [true; 4]);
    assert!(!o.is_frame());
    assert_eq!(o.set_names(&o.idempotents()), strs(&["0", "1"]));

    let q = lib("luk3");
    let e = |s| q.lookup(s).unwrap();
    assert_eq!(q.residual(e("1"), e("1/2")), e("1/2"));
    assert_eq!(q.residual(e("1/2"), e("0")), e("1/2"));
    assert!(divisibility(&q).conditions.iter().all(|c| c.holds));
    assert!(!is_frame(&q).unwrap());
    assert_eq!(names(&q, &idempotents(&q).0), strs(&["0", "1"]));
}

#[test]
fn luk4_idempotents_and_products() {
    let o = Oq::luk(4);
    assert_eq!(o.set_names(&o.idempotents()), strs(&["0", "1"]));
    assert_eq!(names(&lib("luk4"), &idempotents(&lib("luk4")).0), strs(&["0", "1"]));

    let o = Oq::product(&Oq::luk(3), &Oq::chain(2));
    assert!(o.is_divisible() && !o.is_frame());
    let h1 = o.idx("(1/2,1)");
    assert_ne!(o.t(h1, h1), h1);
    let q = lib("luk3xchain2");
    assert_eq!(q.len(), 6);
    assert!(divisibility(&q).divisible() && !is_frame(&q).unwrap());
}

fn drastic_text(n: usize) -> String {
    let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let mut s = format!("quantale drastic{n}\nelements: {}\n", names.join(" "));
    for i in 1..n {
        s += &format!("order: {}<={}\n", names[i - 1], names[i]);
    }
    s += &format!("unit: {}\ntensor:\n", names[n - 1]);
    for a in 0..n {
        let row: Vec<&str> = (0..n)
            .map(|b| if a == n - 1 { &names[b] } else if b == n - 1 { &names[a] } else { &names[0] })
            .map(String::as_str)
            .collect();
        s += &row.join(" ");
        s.push('\n');
    }
    s
}

#[test]
fn drastic_chains() {
    let d3 = parse_quantale(&drastic_text(3)).unwrap().quantale;
    let d4 = parse_quantale(&drastic_text(4)).unwrap().quantale;
    // On three elements the drastic product coincides with the Łukasiewicz one.
    assert_eq!(mirror(&d3).divisibility_conditions(), [true; 4]);
    assert!(divisibility(&d3).divisible());
    assert_eq!(mirror(&d4).divisibility_conditions(), [false; 4]);
    let d = divisibility(&d4);
    assert!(d.conditions.iter().all(|c| !c.holds));
    assert!(d.consistent());
}

#[test]
fn overwritten_l3_fails_axioms() {
    let q = lib("luk3");
    let h = q.lookup("1/2").unwrap();
    let bad = q.with_tensor_entry(h, h, q.top(), true).unwrap();
    let o = mirror(&bad);
    // h <= 1 but h&h = 1 is not below 1&h = h.
    assert!(!o.le(o.t(1, 1), o.t(2, 1)));
    assert!(!bad.is_quantale());
}

#[test]
fn circ_and_downsets() {
    let o = Oq::luk(3);
    let (z, h) = (o.idx("0"), o.idx("1/2"));
    assert_eq!(o.circ(h, h, h), h);
    assert_eq!(o.circ(h, z, h), z);

    let q = lib("luk3");
    let (ez, eh) = (q.lookup("0").unwrap(), q.lookup("1/2").unwrap());
    assert_eq!(circ(&q, eh, eh, eh).unwrap(), eh);
    assert_eq!(circ(&q, eh, ez, eh).unwrap(), ez);

    let (dh, _) = downset_quantale(&q, eh).unwrap();
    assert_eq!(dh.len(), 2);
    assert!(is_frame(&dh).unwrap());

    let l4 = lib("luk4");
    let b = l4.lookup("2/3").unwrap();
    let (db, map) = downset_quantale(&l4, b).unwrap();
    let ob = Oq::luk(4);
    let bi = ob.idx("2/3");
    for (i, &x) in map.iter().enumerate() {
        for (j, &y) in map.iter().enumerate() {
            let v = db.tensor(Elem::new(i), Elem::new(j));
            assert_eq!(map[v.index()].index(), ob.circ(bi, x.index(), y.index()));
        }
    }
    assert_eq!(db.len(), 3);
    assert!(db.is_quantale() && divisibility(&db).divisible());
}

#[test]
fn relative_idempotents_and_meets() {
    let o = Oq::luk(3);
    let (h, one) = (o.idx("1/2"), o.idx("1"));
    assert_eq!(o.set_names(&o.c(one)), strs(&["0", "1"]));
    assert_eq!(o.set_names(&o.c(h)), strs(&["0", "1/2"]));
    assert_eq!(o.t(one, o.res(one, h)), o.meet(one, h));
    assert_eq!(o.t(h, o.res(h, one)), h);

    let q = lib("luk3");
    let e = |s| q.lookup(s).unwrap();
    assert_eq!(names(&q, &relative_idempotents(&q, e("1")).0), strs(&["0", "1"]));
    assert_eq!(names(&q, &relative_idempotents(&q, e("1/2")).0), strs(&["0", "1/2"]));
    assert_eq!(meet_via_residual(&q, e("1"), e("1"), e("1/2")).unwrap(), e("1/2"));
    assert_eq!(meet_via_residual(&q, e("1/2"), e("1/2"), e("1")).unwrap(), e("1/2"));
}

#[test]
fn sqleq_tables() {
    for n in 3..=6 {
        let o = Oq::luk(n);
        let q = lib(&format!("luk{n}"));
        let sq = build_sqleq(&q).unwrap();
        for a in o.all() {
            for b in o.all() {
                assert_eq!(o.sq(a, b), sq.sqleq(Elem::new(a), Elem::new(b)), "luk{n} {a} {b}");
            }
            // A nonzero element is ⊑-below only itself; 0 is ⊑-below everything.
            let above: Vec<usize> = o.all().filter(|&b| o.sq(a, b)).collect();
            let expect = if a == 0 { o.all().collect() } else { vec![a] };
            assert_eq!(above, expect);
        }
    }
    let o = Oq::luk(3);
    let pairs: Vec<(String, String)> = o
        .all()
        .flat_map(|a| o.all().map(move |b| (a, b)))
        .filter(|&(a, b)| o.sq(a, b))
        .map(|(a, b)| (o.nm(a).to_string(), o.nm(b).to_string()))
        .collect();
    let want: Vec<(String, String)> =
        [("0", "0"), ("0", "1/2"), ("0", "1"), ("1/2", "1/2"), ("1", "1")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(pairs, want);

    let q = lib("luk4");
    let sq = build_sqleq(&q).unwrap();
    assert_eq!(names(&q, sq.c(q.top())), strs(&["0", "1"]));
    assert_eq!(Oq::luk(4).set_names(&Oq::luk(4).c(3)), strs(&["0", "1"]));
}

#[test]
fn sqcap_and_sqjoin() {
    let o = Oq::luk(3);
    let (z, h, one) = (o.idx("0"), o.idx("1/2"), o.idx("1"));
    assert_eq!(o.sqcap(&[h, one]), z);
    assert_eq!(o.sqcap(&[z, h]), z);
    // ⊑-upper bounds of {0,h} are {h}; of {h,1} there are none.
    assert_eq!(o.all().filter(|&r| o.sq(z, r) && o.sq(h, r)).collect::<Vec<_>>(), vec![h]);
    assert!(o.all().all(|r| !(o.sq(h, r) && o.sq(one, r))));

    let q = lib("luk3");
    let sq = build_sqleq(&q).unwrap();
    let e = |s| q.lookup(s).unwrap();
    assert_eq!(sq.sqcap(&[e("1/2"), e("1")]).value, e("0"));
    assert_eq!(sq.sqcap(&[e("0"), e("1/2")]).value, e("0"));
    assert_eq!(sq.sq_join(&[e("0"), e("1/2")]).unwrap(), Some(e("1/2")));
    assert_eq!(sq.sq_join(&[e("1/2"), e("1")]).unwrap(), None);
}

#[test]
fn dq_of_l3() {
    let o = Oq::luk(3);
    let (h, one) = (o.idx("1/2"), o.idx("1"));
    // hom(h,1) = ↓(h∧1)
    assert_eq!(o.all().filter(|&u| o.le(u, o.meet(h, one))).count(), 2);
    // 1_1 ↙ h: the join of v <= 1 with v ∘_1 h <= 1.
    let lres: Vec<usize> = o.all().filter(|&v| o.le(o.circ(one, v, h), one)).collect();
    assert_eq!(o.join_of(&lres), one);
    // h ↘ h on the object h.
    let rres: Vec<usize> = o.all().filter(|&u| o.le(u, h) && o.le(o.circ(h, h, u), h)).collect();
    assert_eq!(o.join_of(&rres), h);

    let q = lib("luk3");
    let dq = build_dq(&q).unwrap();
    let (eh, e1) = (q.lookup("1/2").unwrap(), q.lookup("1").unwrap());
    assert_eq!(dq.object_count(), 3);
    assert_eq!(dq.hom(eh.index(), e1.index()).lattice.len(), 2);
    assert_eq!(dq.dq_value(dq.identity(eh.index())), eh);
    let hh = dq.dq_arrow(eh, eh, eh).unwrap();
    assert_eq!(dq.dq_value(dq.compose(hh, hh).unwrap()), eh);
    let u = dq.dq_arrow(e1, e1, eh).unwrap();
    assert_eq!(dq.dq_value(dq.lres(dq.identity(e1.index()), u).unwrap()), e1);
    assert_eq!(dq.dq_value(dq.rres(hh, hh).unwrap()), eh);
    assert!(dq.check_axioms().iter().all(|r| r.passed()));

    // Left adjoints among arrows h -> 1.
    let zero_h1 = dq.dq_arrow(eh, e1, q.bottom()).unwrap();
    assert!(dq.right_adjoint_of(zero_h1).is_none());
    assert!(dq.right_adjoints_exhaustive(zero_h1).is_empty());
    let h_h1 = dq.dq_arrow(eh, e1, eh).unwrap();
    assert!(o.circ(one, h, h) != h);
    assert!(dq.right_adjoint_of(h_h1).is_none());

    let broken = dq.with_identity(eh.index(), 0).unwrap();
    let id = broken.check_axioms().into_iter().find(|r| r.check == "identity-law").unwrap();
    assert!(!id.passed());
}

#[test]
fn qset_examples() {
    let o = Oq::luk(3);
    let (z, h, one) = (o.idx("0"), o.idx("1/2"), o.idx("1"));
    let x = Oset { a: vec![vec![h, h], vec![h, one]] };
    let verdict = x.is_valid(&o);
    let q = lib("luk3");
    let e = |i: usize| Elem::new(i);
    let lx = QSet::new(&q, "ab", strs(&["a", "b"]), vec![e(h), e(h), e(h), e(one)]).unwrap();
    assert_eq!(lx.is_valid(), verdict);
    assert!(verdict);

    let qm = Oset::meets(&o, &[z, h, one]);
    assert!(qm.is_valid(&o) && qm.is_separated());
    let t = QSet::terminal(&q);
    assert!(t.is_valid() && t.is_separated() && t.is_symmetric());

    let ind = Oset { a: vec![vec![h, h], vec![h, h]] };
    assert!(ind.is_valid(&o) && !ind.is_separated());
    let li = QSet::new(&q, "ind", strs(&["x", "y"]), vec![e(h); 4]).unwrap();
    assert!(li.is_valid() && !li.is_separated());
}

#[test]
fn singleton_examples() {
    let o = Oq::luk(3);
    let q = lib("luk3");
    let (z, h, one) = (o.idx("0"), o.idx("1/2"), o.idx("1"));
    let show = |v: &[Vec<usize>]| v.iter().map(|m| o.set_names(m)).collect::<Vec<_>>();
    let lib_show = |x: &QSet<'_>| singletons(x).iter().map(|s| names(&q, &s.values)).collect::<Vec<_>>();

    let ph = Oset::point(h);
    assert_eq!(show(&oracle::singletons(&o, &ph)), vec![strs(&["0"]), strs(&["1/2"])]);
    assert_eq!(lib_show(&QSet::point(&q, Elem::new(h))), show(&oracle::singletons(&o, &ph)));

    let p1 = Oset::point(one);
    assert_eq!(show(&oracle::singletons(&o, &p1)), vec![strs(&["0"]), strs(&["1"])]);
    assert!(!oracle::is_cauchy_complete(&o, &p1));
    assert!(!is_cauchy_complete(&QSet::point(&q, Elem::new(one))));

    let qm = Oset::meets(&o, &[z, h, one]);
    let want: Vec<Vec<usize>> = [z, h, one].iter().map(|&p| [z, h, one].iter().map(|&y| o.meet(p, y)).collect()).collect();
    assert_eq!(oracle::singletons(&o, &qm), want);
    assert_eq!(lib_show(&QSet::terminal(&q)), show(&want));
    assert!(oracle::is_cauchy_complete(&o, &qm));

    let ch = Oset::meets(&o, &o.c(h));
    assert!(oracle::is_cauchy_complete(&o, &ch));
    let c = build_sqleq(&q).unwrap();
    assert!(is_cauchy_complete(&QSet::meet_on(&q, "C_h", c.c(Elem::new(h)))));

    // The empty Q-set has a single left adjoint {⊥} ⇸ ∅ and a single ss-map.
    let empty = Oset { a: vec![] };
    assert_eq!(oracle::singletons(&o, &empty), vec![Vec::<usize>::new()]);
    let adj = oracle::left_adjoints(&o, &empty);
    assert_eq!(adj.iter().map(|(p, _, _)| *p).collect::<Vec<_>>(), vec![z]);
    let le = QSet::new(&q, "e", vec![], vec![]).unwrap();
    assert_eq!(singletons(&le).len(), 1);
}

#[test]
fn zero_distributor_is_not_left_adjoint() {
    let o = Oq::luk(3);
    let qm = Oset::meets(&o, &[0, 1, 2]);
    let adj = oracle::left_adjoints(&o, &qm);
    assert!(!adj.iter().any(|(p, phi, _)| *p == 2 && phi.iter().all(|&v| v == 0)));
}

#[test]
fn completion_of_span_object() {
    let o = Oq::luk(3);
    let (h, one) = (o.idx("1/2"), o.idx("1"));
    let z = oracle::span(&o, h, one);
    assert_eq!(z.a, vec![vec![h, 0], vec![0, one]]);
    let c = oracle::completion(&o, &z);
    let carrier: BTreeSet<Vec<String>> = c.singletons.iter().map(|m| o.set_names(m)).collect();
    let want: BTreeSet<Vec<String>> = [["0", "0"], ["1/2", "0"], ["0", "1"]].iter().map(|p| strs(p)).collect();
    assert_eq!(carrier, want);
    let extents: BTreeSet<usize> = c.singletons.iter().map(|m| o.join_of(m)).collect();
    assert_eq!(extents, [0, h, one].into_iter().collect());
    assert!(oracle::is_cauchy_complete(&o, &c.set) && c.set.is_separated());

    let q = lib("luk3");
    let lz = QSet::new(&q, "z", strs(&["p", "q"]), z.a.concat().into_iter().map(Elem::new).collect()).unwrap();
    let dq = build_dq(&q).unwrap();
    let lc = cauchy_completion(&lz, Some(&dq)).unwrap();
    let lib_carrier: BTreeSet<Vec<String>> = lc.singletons.iter().map(|s| names(&q, &s.values)).collect();
    assert_eq!(lib_carrier, want);
    assert!(oracle::isomorphic(&oset(&lc.qset), &c.set));

    // Pushout object computed through topos-gate matches as well.
    let po = span_pushout_object(&q, Elem::new(h), Elem::new(one), &probe_corpus(&q, 2)).unwrap();
    assert!(po.report.passed());
    assert!(oracle::isomorphic(&oset(&po.completion.qset), &c.set));
}

#[test]
fn completion_of_meet_qset_is_itself() {
    let o = Oq::luk(3);
    let qm = Oset::meets(&o, &[0, 1, 2]);
    let c = oracle::completion(&o, &qm);
    assert!(oracle::isomorphic(&c.set, &qm));
    let q = lib("luk3");
    let t = QSet::terminal(&q);
    let lc = cauchy_completion(&t, None).unwrap();
    assert!(oracle::isomorphic(&oset(&lc.qset), &qm));
    let mut y = lc.yoneda.clone();
    y.sort_unstable();
    assert_eq!(y, vec![0, 1, 2]);
}

#[test]
fn restrictions_and_functors() {
    let o = Oq::luk(3);
    let (z, h, one) = (o.idx("0"), o.idx("1/2"), o.idx("1"));
    // x_p in (Q,∧) is the element p itself: α(p,y) = 1∧y∧p.
    assert_eq!(o.meet(o.meet(one, h), z), z);
    let q = lib("luk3");
    let t = QSet::terminal(&q);
    assert_eq!(restrict_element(&t, one, Elem::new(z)).unwrap(), z);
    let sq = build_sqleq(&q).unwrap();
    let ch = QSet::meet_on(&q, "C_h", sq.c(Elem::new(h)));
    assert_eq!(restrict_element(&ch, 1, Elem::new(z)).unwrap(), 0);

    assert!(!o.sq(h, one));
    assert!(!cq_functor_exists(&q, Elem::new(h), Elem::new(one)).unwrap());
    assert!(cq_functor_exists(&q, Elem::new(z), Elem::new(h)).unwrap());
}

#[test]
fn subobjects_pullbacks_embeddings() {
    let o = Oq::luk(3);
    let (h, one) = (o.idx("1/2"), o.idx("1"));
    let fam: Vec<Vec<String>> = oracle::cc_subsets_of_c(&o, one).iter().map(|s| o.set_names(s)).collect();
    assert_eq!(fam, vec![strs(&["0"]), strs(&["0", "1"])]);
    let q = lib("luk3");
    let (lf, rep) = cc_subobjects_of_cq(&q, q.top()).unwrap();
    assert!(rep.passed());
    assert_eq!(lf.iter().map(|s| names(&q, s)).collect::<Vec<_>>(), fam);

    let b = Oq::boolean(2);
    let top = b.top();
    let bf = oracle::cc_subsets_of_c(&b, top);
    let downs: BTreeSet<Vec<usize>> = b.all().map(|p| b.all().filter(|&x| b.le(x, p)).collect()).collect();
    assert_eq!(bf, downs);

    // pullback object C_{h⊓1} = C_h ∩ C_1 = {0}
    let m = o.sqcap(&[h, one]);
    let inter: Vec<usize> = o.c(h).into_iter().filter(|x| o.c(one).contains(x)).collect();
    assert_eq!(o.c(m), inter);
    assert_eq!(o.set_names(&inter), strs(&["0"]));
    let pb = pullback_check(&q, Elem::new(h), Elem::new(one), &probe_corpus(&q, 2)).unwrap();
    assert!(pb.passed());
    assert_eq!(pb.witness_value("pullback"), Some("{0}"));

    let (a1, a2) = (b.idx("01"), b.idx("10"));
    assert_eq!(b.sqcap(&[a1, a2]), b.bot());
    let lb = boolean_frame(2).unwrap();
    let pb = pullback_check(&lb, Elem::new(a1), Elem::new(a2), &probe_corpus(&lb, 2)).unwrap();
    assert!(pb.passed());
    assert_eq!(pb.witness_value("pullback"), Some("{00}"));

    let emb = embedding_check(&q, Elem::new(h), Elem::new(one)).unwrap();
    assert!(!emb.passed());
    assert_eq!(emb.witness_value("(p⊓q,p∧q)"), Some("(0,1/2)"));

    let o4 = Oq::luk(4);
    let q4 = lib("luk4");
    for a in [o4.idx("1/3"), o4.idx("2/3")] {
        let want = format!("({},{})", o4.nm(o4.sqcap(&[a, 3])), o4.nm(o4.meet(a, 3)));
        let emb = embedding_check(&q4, Elem::new(a), q4.top()).unwrap();
        assert!(!emb.passed());
        assert_eq!(emb.witness_value("(p⊓q,p∧q)"), Some(want.as_str()));
    }
}

#[test]
fn frame_equivalence_examples() {
    for name in ["luk3", "luk3xchain2", "chain2", "bool2"] {
        let q = lib(name);
        let o = mirror(&q);
        let below = o.all().all(|x| o.sq(x, o.top()));
        let meets = o.all().all(|a| o.all().all(|b| o.sqcap(&[a, b]) == o.meet(a, b)));
        let fe = frame_equivalence_check(&q).unwrap();
        assert_eq!((fe.frame, fe.all_below_top, fe.sqcap_is_meet), (o.is_frame(), below, meets), "{name}");
        assert!(fe.agree());
        if !o.is_frame() {
            let first = o.all().find(|&x| !o.sq(x, o.top())).unwrap();
            assert_eq!(fe.report.witness_value("q⋢⊤"), Some(o.nm(first)));
        }
    }
}

#[test]
fn topos_certificates() {
    for (name, least) in [("luk3", "1/2"), ("luk4", "1/3"), ("luk5", "1/4"), ("luk3xchain2", "(1/2,0)"), ("luk3xluk3", "(0,1/2)")] {
        let q = lib(name);
        let o = mirror(&q);
        let l = o.least_non_idempotent().unwrap();
        assert_eq!(o.nm(l), least);
        let top = o.top();
        let cert = o.t(l, o.res(top, l));
        assert_ne!(cert, l);
        let pair = format!("({},{})", o.nm(o.sqcap(&[l, top])), o.nm(o.meet(l, top)));

        let w = topos_witness(&q).unwrap();
        assert!(!w.topos);
        assert_eq!(w.q.as_deref(), Some(least));
        assert_eq!(w.report.witness_value("q&(⊤->q)"), Some(o.nm(cert)));
        assert_eq!(w.report.witness_value("(q⊓⊤,q∧⊤)"), Some(pair.as_str()));
        assert_eq!(w.report.witness_value("q⊑⊤"), Some("false"));
    }
    let o = Oq::luk(3);
    assert_eq!(o.t(1, o.res(2, 1)), 0);
    assert_eq!((o.sqcap(&[1, 2]), o.meet(1, 2)), (0, 1));
    assert!(topos_witness(&lib("bool3")).unwrap().topos);
}
