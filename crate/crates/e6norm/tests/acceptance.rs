//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test -- --nocapture`).
//!
//! 1. structure constants match the classical extraspecial list;
//! 2. Weyl layer: group order, 25 classes, element and centralizer orders;
//! 3. every quoted extended-Weyl-group identity holds exactly;
//! 4. torus orders and Smith structures at q in {2,3,4,5,7,8,9,13};
//! 5. minimal-order lifts for all classes at q in {2,3,4,5};
//! 6. complement decisions match the classification at q in {2,3,4,5},
//!    both isogeny types, with the classical obstruction subsystems
//!    reproduced on every non-split verdict;
//! 7. the explicit complements verify at q in {3,5};
//! 8. algebraic-law property suites and solver-vs-brute-force oracles.

use e6norm::liealg::quoted_identities;
use e6norm::report::expected_split;
use e6norm::snf::solve_mod;
use e6norm::split::{
    build_section_system, decide_complement, obstruction_check, verify_complement, verify_lift,
    GenLift, Mode, SectionProblem,
};
use e6norm::torusnorm::{
    abelian_invariants, act, enumerate_torus, lift_order, torus_invariant_factors, torus_order,
    torus_structure, NormalizerElement, TorusElement, TwistData,
};
use e6norm::weyl::poly_eval;
use e6norm::E6;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const ALL_Q: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 13];

const EXTRASPECIAL_GOLDEN: [(u8, u8); 30] = [
    (1, 3),
    (1, 9),
    (1, 13),
    (1, 15),
    (1, 19),
    (1, 21),
    (1, 24),
    (1, 25),
    (1, 28),
    (1, 31),
    (2, 4),
    (2, 9),
    (2, 10),
    (2, 15),
    (2, 16),
    (2, 21),
    (2, 35),
    (3, 4),
    (3, 10),
    (3, 16),
    (3, 26),
    (3, 30),
    (3, 33),
    (4, 5),
    (4, 11),
    (4, 19),
    (4, 25),
    (4, 34),
    (5, 6),
    (5, 28),
];

#[test]
fn criterion_1_structure_constants() {
    let start = Instant::now();
    // build freshly to time the construction itself
    let rs = e6norm::rootsys::RootSystem::build_e6();
    let tab = e6norm::rootsys::StructureConstantTable::compute(&rs);
    let pairs = rs.extraspecial_pairs();
    assert_eq!(pairs, EXTRASPECIAL_GOLDEN.to_vec());
    assert!(tab.extraspecial.iter().all(|&(_, _, s)| s == 1));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 1 (extraspecial list, 30 triples): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_weyl_layer() {
    let ctx = E6::get();
    let start = Instant::now();
    assert_eq!(ctx.weyl.len(), 51840);
    assert_eq!(ctx.weyl.classes.len(), 25);
    let expected: [(u32, u64); 25] = [
        (1, 51840),
        (2, 1440),
        (2, 192),
        (3, 216),
        (2, 96),
        (6, 36),
        (4, 32),
        (2, 1152),
        (6, 24),
        (3, 108),
        (4, 16),
        (5, 10),
        (6, 36),
        (4, 96),
        (6, 36),
        (4, 96),
        (10, 10),
        (6, 12),
        (8, 8),
        (12, 12),
        (3, 648),
        (6, 36),
        (12, 12),
        (9, 9),
        (6, 72),
    ];
    for (c, &(order, cent)) in ctx.weyl.classes.iter().zip(expected.iter()) {
        assert_eq!(ctx.weyl.order(c.rep), order, "class {}", c.index);
        // recompute the centralizer directly
        assert_eq!(
            ctx.weyl.centralizer(c.rep).len() as u64,
            cent,
            "class {}",
            c.index
        );
    }
    // representatives are pairwise non-conjugate and cover W
    let mut sum = 0u64;
    for c in &ctx.weyl.classes {
        sum += 51840 / c.centralizer_order;
    }
    assert_eq!(sum, 51840);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    println!("criterion 2 (Weyl layer, 25 classes): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_tits_identities() {
    let ctx = E6::get();
    let start = Instant::now();
    let list = quoted_identities(&ctx.tits);
    let failures: Vec<&String> = list.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    assert!(failures.is_empty(), "failing identities: {failures:?}");
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "took {elapsed:?}, budget 10 s"
    );
    println!(
        "criterion 3 (extended Weyl group identities, {} checks): PASS in {elapsed:?}",
        list.len()
    );
}

#[test]
fn criterion_4_torus_orders_and_structures() {
    let ctx = E6::get();
    let start = Instant::now();
    for &q in &ALL_Q {
        for c in &ctx.weyl.classes {
            let order = torus_order(ctx, c.index, q);
            assert_eq!(
                order,
                poly_eval(&c.order_poly, q as i128),
                "class {}",
                c.index
            );
            let a = ctx.roots.word_matrix(&c.rep_word);
            let snf = torus_invariant_factors(&a, q);
            assert_eq!(snf.iter().product::<i128>(), order);
            let printed: Vec<i128> = c
                .cyclic_factors
                .iter()
                .map(|f| poly_eval(f, q as i128))
                .collect();
            assert_eq!(
                abelian_invariants(&printed),
                abelian_invariants(&snf),
                "class {} at q = {q}",
                c.index
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "took {elapsed:?}, budget 10 s"
    );
    println!("criterion 4 (torus orders and structures, 8 q values): PASS in {elapsed:?}");
}

#[test]
fn criterion_5_minimal_order_lifts() {
    let ctx = E6::get();
    let start = Instant::now();
    for q in [2u64, 3, 4, 5] {
        for class in 1..=25u8 {
            let r = verify_lift(ctx, class, q);
            assert_eq!(
                r.order, r.expected as i128,
                "class {class} at q = {q}: lift order mismatch"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "took {elapsed:?}, budget 2 min"
    );
    println!("criterion 5 (order-|w| lifts, 100 scenarios): PASS in {elapsed:?}");
}

#[test]
fn criterion_6_splitting_decisions() {
    let ctx = E6::get();
    let start = Instant::now();
    let mut decisions = 0usize;
    let mut obstructions = 0usize;
    for q in [2u64, 3, 4, 5] {
        for mode in [Mode::Sc, Mode::Adjoint] {
            for class in 1..=25u8 {
                let d = decide_complement(ctx, class, q, mode);
                let expect = expected_split(ctx, class, q);
                assert_eq!(
                    d.splits, expect,
                    "class {class} at q = {q} ({mode:?}): decision disagrees"
                );
                decisions += 1;
                if d.splits {
                    let w = d.witness.expect("split verdicts carry a witness");
                    if let Some(n) = w.closure_order {
                        assert_eq!(
                            n as u64,
                            ctx.weyl.classes[class as usize - 1].centralizer_order
                        );
                    }
                } else {
                    assert!(d.certificate.is_some());
                    let rep = obstruction_check(ctx, class, q, mode);
                    assert!(
                        !rep.subsystem_solvable,
                        "class {class} at q = {q}: classical subsystem must be unsolvable"
                    );
                    obstructions += 1;
                }
            }
        }
    }
    // the recorded class-14 subsystem is solvable exactly when q = 1 mod 4
    assert!(obstruction_check(ctx, 14, 5, Mode::Sc).subsystem_solvable);
    assert!(!obstruction_check(ctx, 14, 3, Mode::Sc).subsystem_solvable);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 600.0,
        "took {elapsed:?}, budget 10 min"
    );
    println!(
        "criterion 6 (splitting decisions, {decisions} decisions, {obstructions} \
         obstruction cross-checks): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_7_explicit_complements() {
    let ctx = E6::get();
    let start = Instant::now();
    let mut closed = 0usize;
    let mut flagged = 0usize;
    for q in [3u64, 5] {
        for class in 1..=25u8 {
            if !expected_split(ctx, class, q) {
                continue;
            }
            let r = verify_complement(ctx, class, q);
            let budget = torus_order(ctx, class, q)
                * ctx.weyl.classes[class as usize - 1].centralizer_order as i128;
            if budget <= 10_000_000 {
                assert_eq!(
                    r.closure_order.map(|n| n as u64),
                    Some(ctx.weyl.classes[class as usize - 1].centralizer_order),
                    "class {class} at q = {q}"
                );
                closed += 1;
            } else {
                assert!(
                    r.closure_skipped,
                    "class {class} at q = {q} should be flagged"
                );
                flagged += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 7 (explicit complements: {closed} closed, {flagged} flagged): \
         PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_8_property_suites_and_oracles() {
    let ctx = E6::get();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x45365f6e6f726d);

    // algebraic laws: 10^4 randomized cases per class, split evenly over
    // the four laws
    for class in 1..=25u8 {
        let tw = TwistData::new(ctx, class, 3, &[]);
        let amb = tw.amb;
        let rand_h = |rng: &mut ChaCha8Rng| TorusElement {
            exps: std::array::from_fn(|_| rng.gen_range(0..amb.m)),
        };
        let rand_x = |rng: &mut ChaCha8Rng| rng.gen_range(0..ctx.weyl.len() as u32);
        for _ in 0..2500 {
            // act composes along matrix products
            let h = rand_h(&mut rng);
            let (u, v) = (rand_x(&mut rng), rand_x(&mut rng));
            let mu = ctx.weyl.mat(u);
            let mv = ctx.weyl.mat(v);
            assert_eq!(
                act(&mu.mul(&mv), &h, &amb),
                act(&mu, &act(&mv, &h, &amb), &amb)
            );
        }
        for _ in 0..2500 {
            // multiplication is associative
            let g1 = NormalizerElement {
                h: rand_h(&mut rng),
                x: rand_x(&mut rng),
            };
            let g2 = NormalizerElement {
                h: rand_h(&mut rng),
                x: rand_x(&mut rng),
            };
            let g3 = NormalizerElement {
                h: rand_h(&mut rng),
                x: rand_x(&mut rng),
            };
            let ab_c = NormalizerElement::multiply(
                ctx,
                &amb,
                &NormalizerElement::multiply(ctx, &amb, &g1, &g2),
                &g3,
            );
            let a_bc = NormalizerElement::multiply(
                ctx,
                &amb,
                &g1,
                &NormalizerElement::multiply(ctx, &amb, &g2, &g3),
            );
            assert_eq!(ab_c, a_bc);
        }
        for _ in 0..2500 {
            // inverses
            let g = NormalizerElement {
                h: rand_h(&mut rng),
                x: rand_x(&mut rng),
            };
            let gi = NormalizerElement::inverse(ctx, &amb, &g);
            assert_eq!(
                NormalizerElement::multiply(ctx, &amb, &g, &gi),
                NormalizerElement::identity()
            );
        }
        for _ in 0..2500 {
            // twisted powers of the class lift agree with iterated
            // normal-form multiplication
            let h = rand_h(&mut rng);
            let m = rng.gen_range(1..=12u32);
            let (torus, tits) = e6norm::torusnorm::twisted_power(&amb, &h, &tw.a, &tw.n, m);
            let base = NormalizerElement::from_tits(ctx, &amb, &h, &tw.n);
            let iterated = NormalizerElement::pow(ctx, &amb, &base, m);
            let folded = NormalizerElement::from_tits(ctx, &amb, &torus, &tits);
            assert_eq!(iterated, folded, "class {class}, power {m}");
        }
    }

    // solver vs brute force on the micro instances
    oracle_class2_relation_set(ctx);
    for class in [12u8, 17, 19, 20, 23, 24] {
        oracle_small_centralizer(ctx, class);
    }
    oracle_class11_subgroup(ctx);

    let elapsed = start.elapsed();
    println!(
        "criterion 8 (10^4 randomized law checks per class + oracle equivalence): \
         PASS in {elapsed:?}"
    );
}

/// Classes 2-3 relation set at q = 3: exhaustive search over the
/// 128-element torus agrees with the linear solver that no section exists.
fn oracle_class2_relation_set(ctx: &'static E6) {
    let twist = TwistData::new(ctx, 2, 3, &[]);
    let amb = twist.amb;
    let st = torus_structure(ctx, 2, 3);
    let torus = enumerate_torus(&amb, &st);
    assert_eq!(torus.len(), 128);
    let parts: Vec<NormalizerElement> = [1u8, 2, 5, 29]
        .iter()
        .map(|&r| {
            NormalizerElement::from_tits(ctx, &amb, &TorusElement::identity(), ctx.tits.n_elt(r))
        })
        .collect();
    let mut found = false;
    'outer: for h1 in &torus {
        let n1 = NormalizerElement {
            h: h1.mul(&amb, &parts[0].h),
            x: parts[0].x,
        };
        if NormalizerElement::multiply(ctx, &amb, &n1, &n1) != NormalizerElement::identity() {
            continue;
        }
        for p in &parts[1..] {
            let ok = torus.iter().any(|hj| {
                let nj = NormalizerElement {
                    h: hj.mul(&amb, &p.h),
                    x: p.x,
                };
                NormalizerElement::multiply(ctx, &amb, &n1, &nj)
                    == NormalizerElement::multiply(ctx, &amb, &nj, &n1)
            });
            if !ok {
                continue 'outer;
            }
        }
        found = true;
        break;
    }
    assert!(!found);
    assert!(!obstruction_check(ctx, 2, 3, Mode::Sc).subsystem_solvable);
}

/// Small-centralizer classes at q = 3: the complement decision equals an
/// exhaustive lift search over the torus.
fn oracle_small_centralizer(ctx: &'static E6, class: u8) {
    let d = decide_complement(ctx, class, 3, Mode::Sc);
    let data = &ctx.weyl.classes[class as usize - 1];
    let twist = TwistData::new(ctx, class, 3, &[]);
    let st = torus_structure(ctx, class, 3);
    let torus = enumerate_torus(&twist.amb, &st);
    match class {
        17 | 19 | 20 | 23 | 24 => {
            // cyclic centralizer: a complement is exactly a lift of w of
            // order |w|
            let brute = torus
                .iter()
                .any(|h| lift_order(ctx, &twist.amb, h, &twist.a, &twist.n) == data.order as i128);
            assert_eq!(d.splits, brute, "class {class}");
        }
        12 => {
            // two commuting generators w and w6: search H1 with |H1 n| = 5,
            // then H2 over w6 with [N1, N2] = 1 and N2^2 = 1
            let amb = twist.amb;
            let w6 = ctx.weyl.id_of(&ctx.roots.reflection_matrix(6));
            let n_of = |h: &TorusElement| NormalizerElement::from_tits(ctx, &amb, h, &twist.n);
            let brute = torus.iter().any(|h1| {
                if lift_order(ctx, &amb, h1, &twist.a, &twist.n) != 5 {
                    return false;
                }
                let n1 = n_of(h1);
                torus.iter().any(|h2| {
                    let n2 = NormalizerElement {
                        h: h2.mul(
                            &amb,
                            &NormalizerElement::from_tits(
                                ctx,
                                &amb,
                                &TorusElement::identity(),
                                ctx.tits.n_elt(6),
                            )
                            .h,
                        ),
                        x: w6,
                    };
                    NormalizerElement::multiply(ctx, &amb, &n2, &n2)
                        == NormalizerElement::identity()
                        && NormalizerElement::multiply(ctx, &amb, &n1, &n2)
                            == NormalizerElement::multiply(ctx, &amb, &n2, &n1)
                })
            });
            assert_eq!(d.splits, brute, "class 12");
        }
        _ => unreachable!(),
    }
}

/// Class 11 at q = 3: brute force over the recorded relation subsystem,
/// decomposed along its two-unknown relations.
fn oracle_class11_subgroup(ctx: &'static E6) {
    let twist = TwistData::new(ctx, 11, 3, &[]);
    let amb = twist.amb;
    let st = torus_structure(ctx, 11, 3);
    let torus = enumerate_torus(&amb, &st);
    assert_eq!(torus.len(), 640);
    let lift = |h: &TorusElement, t: &e6norm::liealg::TitsElement| {
        NormalizerElement::from_tits(ctx, &amb, h, t)
    };
    let id = NormalizerElement::identity();
    // relations: N2^2 = 1 (over w6), [N2, N3] = 1 (N3 over w36),
    // [N1, N2] = 1 (N1 over w)
    let mut found = false;
    'outer: for h2 in &torus {
        let n2 = lift(h2, ctx.tits.n_elt(6));
        if NormalizerElement::multiply(ctx, &amb, &n2, &n2) != id {
            continue;
        }
        let ok3 = torus.iter().any(|h3| {
            let n3 = lift(h3, ctx.tits.n_elt(36));
            NormalizerElement::multiply(ctx, &amb, &n2, &n3)
                == NormalizerElement::multiply(ctx, &amb, &n3, &n2)
        });
        if !ok3 {
            continue 'outer;
        }
        let ok1 = torus.iter().any(|h1| {
            let n1 = lift(h1, &twist.n);
            NormalizerElement::multiply(ctx, &amb, &n1, &n2)
                == NormalizerElement::multiply(ctx, &amb, &n2, &n1)
        });
        if ok1 {
            found = true;
            break;
        }
    }
    assert!(!found, "class 11 subsystem has no brute-force solution");
    assert!(!obstruction_check(ctx, 11, 3, Mode::Sc).subsystem_solvable);
    // and the solver on the same subsystem (not just the full system)
    // agrees; rebuild it directly for good measure. The bare lift words
    // fold into normal form as (h-part, weyl image).
    let gens: Vec<GenLift> = [&twist.n, ctx.tits.n_elt(6), ctx.tits.n_elt(36)]
        .iter()
        .map(|t| {
            let x = ctx.tits.weyl_image(&ctx.weyl, t);
            let eps = ctx.tits.h_part(&ctx.weyl, t);
            GenLift {
                x,
                q_part: amb.h_exps(eps),
            }
        })
        .collect();
    let problem = SectionProblem {
        twist,
        gens,
        relators: vec![vec![2, 2], vec![2, 3, -2, -3], vec![1, 2, -1, -2]],
        mode: Mode::Sc,
    };
    let system = build_section_system(ctx, &problem);
    assert!(solve_mod(&system.rows, &system.rhs, system.modulus).is_none());
}
