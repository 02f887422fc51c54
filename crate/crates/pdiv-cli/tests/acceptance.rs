//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILURES`
//! are reported but do not fail the run.

use std::path::Path;
use std::time::Instant;

use pdiv::base::{Base, QDivisor, RationalFunction, ToricBase};
use pdiv::cox::{cox_correct, cox_sequence, graded_dims_agree, splitting_change, CoxHypotheses};
use pdiv::deform::{check_admissible, deformation_upgrade, family_pdivisor, upgrade_formulas};
use pdiv::downgrade::{downgrade, in_split_coordinates, DowngradeContext};
use pdiv::lattice::{int_det, multiplicity, IntMat, LatticeMap, SplitOptions};
use pdiv::linalg;
use pdiv::pdivisor::PolyhedralDivisor;
use pdiv::polyhedra::{Bound, Cone, Polyhedron};
use pdiv::rat::{dot, q, qf, qv, zeros};
use pdiv::tvariety::{DivisorialFan, TInvariantDivisor};
use pdiv::upgrade::{correct_pic_z, upgrade, upgrade_tailcone};
use pdiv::{Int, QVec, Q};
use pdiv_cli::{parse_file, Object};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: &[usize] = &[5];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn fixture(name: &str) -> Object {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    parse_file(&p).unwrap_or_else(|e| panic!("{name}: {e}")).object
}

fn up(a: Q) -> Polyhedron {
    Polyhedron::hull(1, &[vec![a]], &[qv(&[1])])
}

fn down(a: Q) -> Polyhedron {
    Polyhedron::hull(1, &[vec![a]], &[qv(&[-1])])
}

fn seg(a: Q, b: Q) -> Polyhedron {
    Polyhedron::hull(1, &[vec![a], vec![b]], &[])
}

fn member(t: i64, cs: Vec<(&str, Polyhedron)>) -> PolyhedralDivisor {
    PolyhedralDivisor::new(Base::ProjectiveLine, Cone::new(1, &[qv(&[t])]), cs).unwrap()
}

// 1

fn non_contraction_free_plane() -> Check {
    let Object::InvariantPDivisor(bad) = fixture("p2_non_contraction_free.json") else { return Err("kind".into()) };
    let Object::InvariantPDivisor(good) = fixture("p2_contraction_free.json") else { return Err("kind".into()) };
    let t = upgrade_tailcone(&bad);
    ensure(t == Cone::new(2, &[qv(&[1, 0]), qv(&[1, 2])]), "tailcone differs")?;
    let u = upgrade(&bad).map_err(e2s)?;
    ensure(u.divisor.coeff("inf") == t.poly().translate(&qv(&[0, -1])), "Δ_∞ differs")?;
    ensure(!u.report.is_proper(), "non-contraction-free upgrade reported proper")?;
    let g = upgrade(&good).map_err(e2s)?;
    ensure(g.report.is_proper(), "contraction-free upgrade not proper")?;
    let (fixed, _) = correct_pic_z(&u.divisor).map_err(e2s)?;
    ensure(fixed == g.divisor, "correction differs from the contraction-free upgrade")?;
    Ok("tailcone pos{(1,0),(1,2)}, not proper; CF variant proper and equal to the correction".into())
}

// 2

fn toric_downgrade_example() -> Check {
    let Object::ToricDowngradeInput { generators, sub } = fixture("downgrade_with_difficulties_toric.json") else {
        return Err("kind".into());
    };
    let m: IntMat = generators.iter().map(|g| g.iter().map(|x| x.to_integer()).collect()).collect();
    let det = int_det(&m);
    ensure(&det * &det == Int::from(1), "σ̃ is not unimodular")?;
    let r = pdiv::pdivisor::toric_downgrade(&generators, &sub).map_err(e2s)?;
    let v0 = qv(&[1, 1, 1]);
    let i0 = r.base.rays.iter().position(|(_, v)| *v == v0).ok_or("v₀ is missing")?;
    ensure(r.base.cones.len() == 4, format!("{} maximal cones", r.base.cones.len()))?;
    let images: Vec<QVec> = generators.iter().map(|g| g[1..].to_vec()).collect();
    let idx = |v: &QVec| r.base.rays.iter().position(|(_, w)| w == v).unwrap();
    let mut expected: Vec<Vec<usize>> = [[1, 2], [1, 3], [3, 4], [2, 4]]
        .iter()
        .map(|p| {
            let mut c = vec![i0, idx(&images[p[0] - 1]), idx(&images[p[1] - 1])];
            c.sort();
            c
        })
        .collect();
    expected.sort();
    let mut cones: Vec<Vec<usize>> = r.base.cones.iter().map(|c| {
        let mut c = c.clone();
        c.sort();
        c
    }).collect();
    cones.sort();
    ensure(cones == expected, "image fan cones differ")?;
    let label = |i: usize| r.base.rays[i].0.clone();
    ensure(label(idx(&images[3])) == "D4" && label(i0) == "D5", "ray labels")?;
    let expected = PolyhedralDivisor::new(
        Base::Toric(r.base.clone()),
        Cone::zero(1),
        vec![("D4", Polyhedron::point(&[q(1)])), ("D5", seg(q(0), q(1)))],
    )
    .map_err(e2s)?;
    ensure(r.divisor == expected, format!("downgraded divisor is {}", r.divisor))?;
    Ok("det ±1, four cones around v₀ = (1,1,1), {1}⊗D4 + [0,1]⊗D5".into())
}

// 3

fn a1_deformation() -> Check {
    let Object::Deformation(din) = fixture("a1_deformation.json") else { return Err("kind".into()) };
    ensure(check_admissible(&din).is_admissible(), "not admissible")?;
    let fam = family_pdivisor(&din).map_err(e2s)?;
    ensure(fam.coeff("D0") == Polyhedron::point(&[q(-1)]), "P₀ coefficient of the family")?;
    ensure(fam.coeff("D1") == seg(q(0), q(1)), "P₁ coefficient of the family")?;
    let up = deformation_upgrade(&din).map_err(e2s)?;
    let delta = din.delta().poly().clone();
    let expected = PolyhedralDivisor::new(
        Base::ProjectiveLine,
        din.delta().clone(),
        vec![
            ("0", Polyhedron::point(&[qf(-1, 2), qf(1, 2)]).minkowski_sum(&delta)),
            ("1", Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[1, 0])], &[]).minkowski_sum(&delta)),
        ],
    )
    .map_err(e2s)?;
    ensure(up.divisor == expected, format!("upgrade is {}", up.divisor))?;
    ensure(upgrade_formulas(&din).map_err(e2s)? == up.divisor, "routes disagree")?;
    Ok("admissible; ((Δ₀,1/2)+δ)⊗{0} + ((Δ₁,0)+δ)⊗{1}; both routes agree".into())
}

// 4

fn psi_zero() -> Check {
    let b = Base::Toric(
        ToricBase::new(
            2,
            vec![("D1".into(), qv(&[1, 0])), ("D2".into(), qv(&[0, 1])), ("E".into(), qv(&[1, 1]))],
            vec![vec![0, 2], vec![2, 1]],
        )
        .map_err(e2s)?
        .with_semiprojective(true),
    );
    let t = Cone::new(1, &[qv(&[1])]);
    let d1 = PolyhedralDivisor::new(b.clone(), t.clone(), vec![("E", up(q(1))), ("D2", Polyhedron::empty(1))]).map_err(e2s)?;
    let d2 = PolyhedralDivisor::new(b.clone(), t.clone(), vec![("E", up(q(1))), ("D1", Polyhedron::empty(1))]).map_err(e2s)?;
    let s = DivisorialFan::new(b.clone(), vec![d1, d2]).map_err(e2s)?;
    let psi = TInvariantDivisor::zero(&s).map_err(e2s)?.psi();
    let expected =
        PolyhedralDivisor::new(b.clone(), t, vec![("D1", up(q(0))), ("E", up(q(1))), ("D2", up(q(0)))]).map_err(e2s)?;
    ensure(psi.to_pdivisor().map_err(e2s)? == expected, "Ψ⁰ differs")?;
    let e = psi.evaluate(&qv(&[1])).map_err(e2s)?;
    ensure(e == QDivisor::from_finite(&[("E", q(1))]), "Ψ⁰(1) ≠ E")?;
    let pos = b.positivity(&e).map_err(e2s)?;
    ensure(pos.big && !pos.semiample, format!("{pos:?}"))?;
    Ok("Ψ⁰ = [0,∞)⊗D₁ + [1,∞)⊗E + [0,∞)⊗D₂, Ψ⁰(1) = E big and not semiample".into())
}

// 5

fn c3_like_properness() -> Check {
    let Object::PDivisor(d) = fixture("c3_like.json") else { return Err("kind".into()) };
    let r = d.is_proper().map_err(e2s)?;
    if r.is_proper() {
        Ok("{1/2}⊗D₁ + {1/3}⊗D₂ + [0,1/6]⊗E is proper".into())
    } else {
        Err(format!("properness report {r:?}"))
    }
}

// 6

fn random_vertex(rng: &mut ChaCha8Rng) -> QVec {
    let d = rng.gen_range(1..=2);
    vec![qf(rng.gen_range(-2..=2), d), qf(rng.gen_range(-2..=2), d)]
}

fn random_tail(rng: &mut ChaCha8Rng) -> Cone {
    let choices = [[[1, 0], [0, 1]], [[1, 0], [1, 1]], [[1, 2], [1, -1]], [[0, 1], [-1, 1]]];
    let c = choices[rng.gen_range(0..choices.len())];
    Cone::new(2, &[qv(&c[0]), qv(&c[1])])
}

fn random_rank2(rng: &mut ChaCha8Rng) -> PolyhedralDivisor {
    let s = random_tail(rng);
    let labels = ["0", "1", "inf", "2"];
    let n = rng.gen_range(1..=4);
    let cs: Vec<(&str, Polyhedron)> = (0..n)
        .map(|i| {
            let k = rng.gen_range(1..=3);
            let vs: Vec<QVec> = (0..k).map(|_| random_vertex(rng)).collect();
            (labels[i], Polyhedron::hull(2, &vs, &[]).minkowski_sum(s.poly()))
        })
        .collect();
    PolyhedralDivisor::new(Base::ProjectiveLine, s, cs).unwrap()
}

fn round_trips() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let prs: [[i64; 2]; 4] = [[1, 0], [0, 1], [1, 1], [2, 1]];
    let (mut done, mut identity) = (0, 0);
    while done < 200 {
        let d = random_rank2(&mut rng);
        if !d.is_proper().map_err(e2s)?.is_proper() {
            continue;
        }
        let pr = prs[rng.gen_range(0..prs.len())];
        let ctx = DowngradeContext::new(LatticeMap::from_i64(2, &[&pr])).map_err(e2s)?;
        let back = upgrade(&downgrade(&d, &ctx).map_err(e2s)?.divisor).map_err(e2s)?.divisor;
        ensure(graded_dims_agree(&d, &back, &ctx.split_coordinates(), 3).map_err(e2s)?, format!("graded dimensions differ for {d}"))?;
        // `back` is an upgrade; downgrading along the first coordinate and upgrading returns it
        let ctx2 = DowngradeContext::new(LatticeMap::from_i64(2, &[&[1, 0]])).map_err(e2s)?;
        ensure(in_split_coordinates(&back, &ctx2).map_err(e2s)? == back, "split is not the identity")?;
        let again = upgrade(&downgrade(&back, &ctx2).map_err(e2s)?.divisor).map_err(e2s)?.divisor;
        ensure(again == back, format!("round trip of the upgrade {back} gave {again}"))?;
        identity += 1;
        done += 1;
    }
    Ok(format!("{done} proper divisors keep their graded dimensions; {identity} upgrades round-trip exactly"))
}

// 7

/// Complete contraction-free fans over P¹ of rank one.
fn cf_fans() -> Vec<DivisorialFan> {
    let b = Base::ProjectiveLine;
    let e = Polyhedron::empty(1);
    let mk = |ms: Vec<PolyhedralDivisor>| DivisorialFan::new(b.clone(), ms).unwrap();
    vec![
        mk(vec![
            member(1, vec![("inf", e.clone())]),
            member(1, vec![("inf", up(q(-1))), ("0", e.clone())]),
            member(-1, vec![("inf", e.clone())]),
            member(-1, vec![("inf", down(q(-1))), ("0", e.clone())]),
        ]),
        mk(vec![
            member(1, vec![("0", e.clone())]),
            member(1, vec![("inf", e.clone())]),
            member(-1, vec![("0", e.clone())]),
            member(-1, vec![("inf", e.clone())]),
        ]),
        mk(vec![
            member(1, vec![("inf", e.clone())]),
            member(1, vec![("inf", up(qf(-1, 2))), ("0", e.clone())]),
            member(-1, vec![("inf", e.clone())]),
            member(-1, vec![("inf", down(qf(-1, 2))), ("0", e.clone())]),
        ]),
        mk(vec![
            member(1, vec![("inf", e.clone()), ("1", up(q(1)))]),
            member(1, vec![("inf", up(q(-2))), ("0", e.clone()), ("1", up(q(1)))]),
            member(-1, vec![("inf", e.clone()), ("1", down(q(1)))]),
            member(-1, vec![("inf", down(q(-2))), ("0", e.clone()), ("1", down(q(1)))]),
        ]),
    ]
}

fn random_invariant_divisor(rng: &mut ChaCha8Rng, s: &DivisorialFan) -> TInvariantDivisor {
    let (rays, verts) = s.invariant_prime_divisors().unwrap();
    let rc: Vec<(QVec, Q)> = rays.into_iter().map(|r| (r, q(rng.gen_range(-2..=2)))).collect();
    let mut vc: Vec<(String, QVec, Q)> = Vec::new();
    for (p, vs) in verts {
        for v in vs {
            vc.push((p.clone(), v, q(rng.gen_range(-2..=2))));
        }
    }
    TInvariantDivisor::new(s, rc, vc).unwrap()
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `dim` of the span of all `f·χᵘ` with `f = ∏ (x − a)^{n_a}` over `a ∈ {0, 1}`,
/// `|n_a| ≤ w`, that satisfy `div(fχᵘ) + D ≥ 0`.
fn brute_force_sections(d: &TInvariantDivisor, u: &QVec, w: i64) -> usize {
    let s = d.fan();
    let (rays, _) = s.invariant_prime_divisors().unwrap();
    if rays.iter().any(|r| dot(r, u) + d.ray_coeff(r) < q(0)) {
        return 0;
    }
    let ok_at = |p: &str, ord: i64| {
        let mut vs = s.vertices(p);
        if vs.is_empty() {
            vs.push(zeros(u.len()));
        }
        vs.iter().all(|v| {
            let mu = Q::from_integer(multiplicity(v));
            // the coefficient of D_{P,v} is μ(v)·b_{P,v}
            mu.clone() * (dot(v, u) + q(ord)) + mu * d.vertex_coeff(p, v) >= q(0)
        })
    };
    let mut rows = Vec::new();
    for n0 in -w..=w {
        for n1 in -w..=w {
            if !(ok_at("0", n0) && ok_at("1", n1) && ok_at("inf", -n0 - n1)) {
                continue;
            }
            // (x)^(n0+w) (x-1)^(n1+w) as a polynomial of degree ≤ 4w
            let mut p = vec![q(1)];
            for _ in 0..n0 + w {
                p = poly_mul(&p, &[q(0), q(1)]);
            }
            for _ in 0..n1 + w {
                p = poly_mul(&p, &[q(-1), q(1)]);
            }
            p.resize(4 * w as usize + 1, q(0));
            rows.push(p);
        }
    }
    linalg::rank(&rows)
}

fn sections_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fans = cf_fans();
    for s in &fans {
        ensure(s.is_contraction_free(), "test fan is not contraction-free")?;
    }
    let mut compared = 0;
    for i in 0..100 {
        let s = &fans[i % fans.len()];
        let d = random_invariant_divisor(&mut rng, s);
        for u in -3..=3 {
            let u = qv(&[u]);
            let fast = match d.graded_sections(&u, 12) {
                Ok(x) => x.dim,
                Err(pdiv::Error::WeightOutsideBox) => 0,
                Err(e) => return Err(e2s(e)),
            };
            let slow = brute_force_sections(&d, &u, 8);
            ensure(fast == slow, format!("instance {i} at u = {u:?}: {fast} vs {slow}"))?;
            compared += 1;
        }
    }
    Ok(format!("100 invariant divisors, {compared} graded pieces agree with enumeration"))
}

// 8

fn random_cone(rng: &mut ChaCha8Rng) -> Cone {
    let dim = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=4);
    let gens: Vec<QVec> = (0..k).map(|_| (0..dim).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
    Cone::new(dim, &gens)
}

fn random_polytope(rng: &mut ChaCha8Rng, dim: usize) -> Polyhedron {
    let k = rng.gen_range(1..=4);
    let vs: Vec<QVec> = (0..k).map(|_| (0..dim).map(|_| qf(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect()).collect();
    Polyhedron::hull(dim, &vs, &[])
}

fn bound_sum(a: Bound, b: Bound) -> Option<Q> {
    match (a, b) {
        (Bound::Finite(x), Bound::Finite(y)) => Some(x + y),
        _ => None,
    }
}

fn semiample_generators(s: &DivisorialFan, rng: &mut ChaCha8Rng) -> TInvariantDivisor {
    let h = TInvariantDivisor::new(s, vec![(qv(&[1]), q(1))], Vec::<(&str, QVec, Q)>::new()).unwrap();
    let e = TInvariantDivisor::new(s, Vec::new(), vec![("inf", qv(&[-1]), q(2))]).unwrap();
    let f = RationalFunction::from_factors(0, &[("0", rng.gen_range(-2..=2)), ("1", rng.gen_range(-2..=2))]);
    let p = TInvariantDivisor::principal(s, &f, &qv(&[rng.gen_range(-2..=2)])).unwrap();
    h.scale(&q(rng.gen_range(0..=2))).plus(&e.scale(&q(rng.gen_range(0..=2)))).plus(&p)
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let c = random_cone(&mut rng);
        ensure(c.dual().dual() == c, format!("dual involution fails on instance {i}"))?;
    }
    for i in 0..100 {
        let dim = rng.gen_range(1..=3);
        let (a, b, c) = (random_polytope(&mut rng, dim), random_polytope(&mut rng, dim), random_polytope(&mut rng, dim));
        ensure(a.minkowski_sum(&b) == b.minkowski_sum(&a), format!("commutativity, instance {i}"))?;
        ensure(
            a.minkowski_sum(&b).minkowski_sum(&c) == a.minkowski_sum(&b.minkowski_sum(&c)),
            format!("associativity, instance {i}"),
        )?;
        ensure(a.minkowski_sum(&Polyhedron::origin(dim)) == a, "neutral element")?;
        let u: QVec = (0..dim).map(|_| q(rng.gen_range(-3..=3))).collect();
        let lhs = match a.minkowski_sum(&b).min_pairing(&u) {
            Bound::Finite(x) => Some(x),
            _ => None,
        };
        ensure(lhs == bound_sum(a.min_pairing(&u), b.min_pairing(&u)), format!("support function, instance {i}"))?;
    }
    let mut convex = 0;
    while convex < 100 {
        let d = random_rank2(&mut rng);
        let w = d.weight_cone();
        let pick = |rng: &mut ChaCha8Rng| -> QVec { vec![q(rng.gen_range(-4..=4)), q(rng.gen_range(-4..=4))] };
        let (u, v) = (pick(&mut rng), pick(&mut rng));
        if !w.contains(&u) || !w.contains(&v) {
            continue;
        }
        let uv: QVec = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let lhs = d.evaluate(&u).map_err(e2s)?.plus(&d.evaluate(&v).map_err(e2s)?);
        ensure(lhs.le(&d.evaluate(&uv).map_err(e2s)?), format!("convexity fails for {d}"))?;
        convex += 1;
    }
    let fans = cf_fans();
    let s = &fans[0];
    let mut boxes = 0;
    while boxes < 100 {
        let d = semiample_generators(s, &mut rng);
        let e = semiample_generators(s, &mut rng);
        ensure(d.is_basepoint_free(3).map_err(e2s)?.is_free(), "generated divisor is not semiample")?;
        let lhs = d.box_polyhedron().minkowski_sum(&e.box_polyhedron());
        ensure(lhs == d.plus(&e).box_polyhedron(), format!("Box sum fails, instance {boxes}"))?;
        boxes += 1;
    }
    Ok("100 cones, 100 Minkowski triples, 100 convexity pairs, 100 semiample Box sums".into())
}

// 9

fn cox_fans() -> Vec<DivisorialFan> {
    let b = Base::ProjectiveLine;
    let e = Polyhedron::empty(1);
    let mut out = Vec::new();
    for a in [q(0), q(1), q(-1), qf(1, 2), q(2), qf(-1, 2), qf(3, 2)] {
        for c in [q(-1), q(0), q(1), qf(-1, 2), q(-2)] {
            let ms = vec![
                member(1, vec![("0", up(a.clone())), ("inf", e.clone())]),
                member(1, vec![("inf", up(c.clone())), ("0", e.clone())]),
                member(-1, vec![("0", down(a.clone())), ("inf", e.clone())]),
                member(-1, vec![("inf", down(c.clone())), ("0", e.clone())]),
            ];
            if let Ok(s) = DivisorialFan::new(b.clone(), ms) {
                out.push(s);
            }
        }
    }
    out
}

fn cox_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let hyp = CoxHypotheses { complete: true, q_factorial: true, cl_torsion_free: true };
    let marks = vec!["0".to_string(), "inf".to_string()];
    let mut tested = 0;
    let mut skipped = 0;
    for s in cox_fans() {
        let Ok(a) = cox_sequence(&s, &marks, hyp, &SplitOptions::canonical()) else {
            skipped += 1;
            continue;
        };
        let Ok((da, _)) = cox_correct(&a) else {
            skipped += 1;
            continue;
        };
        let mut order: Vec<usize> = (0..a.generators()).collect();
        order.shuffle(&mut rng);
        let b = cox_sequence(&s, &marks, hyp, &SplitOptions { pivot_order: Some(order.clone()), canonical: false })
            .map_err(e2s)?;
        let (db, _) = cox_correct(&b).map_err(e2s)?;
        let phi = splitting_change(&a, &b);
        ensure(graded_dims_agree(&da, &db, &phi, 2).map_err(e2s)?, format!("pivot order {order:?} changes dimensions"))?;
        tested += 1;
    }
    ensure(tested >= 20, format!("only {tested} fans usable ({skipped} skipped)"))?;
    Ok(format!("{tested} fans, graded dimensions invariant under a permuted pivot order"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("upgrade of the non-contraction-free plane", non_contraction_free_plane),
        ("toric downgrade with difficulties", toric_downgrade_example),
        ("A1 deformation", a1_deformation),
        ("Psi^0 on the blown-up plane", psi_zero),
        ("properness of the C3-like threefold", c3_like_properness),
        ("downgrade/upgrade round trips", round_trips),
        ("sections oracle", sections_oracle),
        ("convexity and duality suites", property_suites),
        ("Cox pivot invariance", cox_invariance),
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let n = i + 1;
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {n} PASS  {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                let known = KNOWN_FAILURES.contains(&n);
                if !known {
                    unexpected += 1;
                }
                let tag = if known { " (known)" } else { "" };
                println!("criterion {n} FAIL{tag}  {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
