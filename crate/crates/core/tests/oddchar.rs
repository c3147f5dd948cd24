//! Odd-characteristic coverage: every sign convention in the bracket table
//! vanishes mod 2, so the whole pipeline is exercised again over GF(3) and
//! GF(9) = GF(3)[a]/(a^2+1).

use gradedlie::analyzer::{
    chain, classify, covering_degree, k_chain_check, predicted_r, two_step_fields,
    DichotomyResult, GeneratingSpace,
};
use gradedlie::fieldtower::{stabilizer, FieldTower};
use gradedlie::fsubspace::FSubspace;
use gradedlie::maxclass::{search_sequences, CentraliserLine, HomElement, MaxClassAlgebra};

fn gf9() -> FieldTower {
    FieldTower::finite(3, &[1, 0, 1]).unwrap()
}

fn gf3() -> FieldTower {
    FieldTower::finite(3, &[0, 1]).unwrap()
}

#[test]
fn gf9_arithmetic_and_subfields() {
    let t = gf9();
    let a = t.alpha();
    // a^2 = -1 = 2
    assert_eq!(t.mul(&a, &a).unwrap(), t.scalar(2));
    // (a+1)(a+2) = a^2 + 3a + 2 = a^2 + 2 = 1
    let u = t.element(&[1, 1]).unwrap();
    let v = t.element(&[2, 1]).unwrap();
    assert_eq!(t.mul(&u, &v).unwrap(), t.one());
    assert_eq!(t.inv(&u).unwrap(), v);
    // a is a primitive fourth root of unity; a+1 generates the full
    // multiplicative group of order 8
    assert_eq!(t.pow(&a, 4).unwrap(), t.one());
    assert_ne!(t.pow(&a, 2).unwrap(), t.one());
    let g = t.element(&[1, 1]).unwrap();
    assert_eq!(t.pow(&g, 8).unwrap(), t.one());
    assert_ne!(t.pow(&g, 4).unwrap(), t.one());
    assert_ne!(t.pow(&g, 2).unwrap(), t.one());
    // the only proper subfield is GF(3)
    let f = gradedlie::fieldtower::subfield_generated(&t, &[t.scalar(2)]).unwrap();
    assert_eq!(f.degree(), 1);
    let e = gradedlie::fieldtower::subfield_generated(&t, &[a]).unwrap();
    assert_eq!(e.degree(), 2);
}

#[test]
fn gf9_stabilizer_matches_bruteforce() {
    let t = gf9();
    // U = F-span{(1,0),(0,1)} in E^2: scaling by b keeps it only for b in F
    let space = FSubspace::span_elements(
        t.ambient(2),
        &[vec![t.one(), t.zero()], vec![t.zero(), t.one()]],
    )
    .unwrap();
    let report = stabilizer(&space).unwrap();
    assert_eq!(report.degree(), 1);
    assert!(report.is_field);
    let mut brute = 0;
    for c0 in 0..3u64 {
        for c1 in 0..3u64 {
            let beta = t.element(&[c0, c1]).unwrap();
            let ok = space.rows().iter().all(|row| {
                let point = space.ambient().unflatten(row);
                let scaled: Vec<_> =
                    point.iter().map(|x| t.mul(&beta, x).unwrap()).collect();
                space.member(&space.ambient().flatten(&scaled)).unwrap()
            });
            if ok {
                brute += 1;
            }
        }
    }
    assert_eq!(brute, 3); // exactly GF(3)
}

#[test]
fn metabelian_over_gf9_certifies_with_signs() {
    let t = gf9();
    let mut m = MaxClassAlgebra::metabelian(&t, 16).unwrap();
    let report = m.validate();
    assert!(report.ok, "failures: {:?}", report.failures);

    // antisymmetry really is a sign condition here: [x, e_2] = -[e_2, x]
    let e2 = HomElement::basis(&t, 2);
    let x = HomElement::x(&t);
    let HomElement::Higher { coeff: fwd, .. } = m.bracket(&e2, &x).unwrap() else {
        unreachable!()
    };
    let HomElement::Higher { coeff: bwd, .. } = m.bracket(&x, &e2).unwrap() else {
        unreachable!()
    };
    assert_eq!(fwd, t.one());
    assert_eq!(bwd, t.scalar(2));
    assert_eq!(t.add(&fwd, &bwd).unwrap(), t.zero());

    // [y, x] = e_2 and [x, y] = -e_2
    let HomElement::Higher { coeff: yx, .. } =
        m.bracket(&HomElement::y(&t), &HomElement::x(&t)).unwrap()
    else {
        unreachable!()
    };
    let HomElement::Higher { coeff: xy, .. } =
        m.bracket(&HomElement::x(&t), &HomElement::y(&t)).unwrap()
    else {
        unreachable!()
    };
    assert_eq!(yx, t.one());
    assert_eq!(xy, t.scalar(2));
}

#[test]
fn jacobi_on_random_elements_over_gf9() {
    use rand::{Rng, SeedableRng};
    let t = gf9();
    let n = 14usize;
    let m = MaxClassAlgebra::metabelian(&t, n).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let random_elem = |rng: &mut rand_chacha::ChaCha8Rng, deg: usize| {
        let coeffs =
            t.element(&[rng.random_range(0..3), rng.random_range(0..3)]).unwrap();
        if deg == 1 {
            let b = t.element(&[rng.random_range(0..3), rng.random_range(0..3)]).unwrap();
            HomElement::degree1(coeffs, b)
        } else {
            HomElement::higher(deg, coeffs)
        }
    };
    for _ in 0..1000 {
        let du = rng.random_range(1..5);
        let dv = rng.random_range(1..5);
        let dw = rng.random_range(1..5);
        if du + dv + dw > n {
            continue;
        }
        let u = random_elem(&mut rng, du);
        let v = random_elem(&mut rng, dv);
        let w = random_elem(&mut rng, dw);
        let vw = m.bracket(&v, &w).unwrap();
        let lhs = m.bracket(&u, &vw).unwrap();
        let uv = m.bracket(&u, &v).unwrap();
        let uw = m.bracket(&u, &w).unwrap();
        let HomElement::Higher { coeff: l, .. } = lhs else { unreachable!() };
        let HomElement::Higher { coeff: r1, .. } = m.bracket(&uv, &w).unwrap() else {
            unreachable!()
        };
        let HomElement::Higher { coeff: r2, .. } = m.bracket(&uw, &v).unwrap() else {
            unreachable!()
        };
        assert_eq!(l, t.sub(&r1, &r2).unwrap());
    }
}

#[test]
fn search_over_gf3_finds_nonmetabelian_certificates_and_they_validate() {
    let t = gf3();
    let out = search_sequences(&t, 9, 2, 10_000_000).unwrap();
    assert!(!out.exhausted);
    let ey = CentraliserLine::ey(&t);
    assert!(out.sequences.contains(&vec![ey.clone(); 7]));
    // every hit revalidates; Jacobi signs are live over GF(3)
    for seq in &out.sequences {
        let mut m = MaxClassAlgebra::from_centralisers(&t, seq, 9).unwrap();
        assert!(m.validate().ok, "{seq:?}");
        assert_eq!(seq[0], seq[1]);
        // extracted centralisers match declared lines degree by degree
        for i in 2..=7usize {
            assert_eq!(m.two_step_centraliser(i).unwrap(), seq[i - 2]);
        }
    }
}

#[test]
fn example_shape_over_gf9_is_two_constrained() {
    let t = gf9();
    let n = 16usize;
    let m = MaxClassAlgebra::metabelian(&t, n).unwrap();
    let l1 = FSubspace::span_elements(
        t.ambient(2),
        &[
            vec![t.one(), t.zero()],
            vec![t.alpha(), t.zero()],
            vec![t.zero(), t.one()],
        ],
    )
    .unwrap();
    let gen = GeneratingSpace::new(&m, l1).unwrap();

    let c = chain(&m, &gen, n).unwrap();
    assert!(c.dims.iter().all(|&d| d == 2));

    let fields = two_step_fields(&m, &gen, n).unwrap();
    assert_eq!(fields.t, 2);
    assert!(fields.stabilized);

    let kc = k_chain_check(&m, &gen, &fields.k, n).unwrap();
    assert_eq!(kc.dim_k_t1, 2);
    assert!(kc.drop_ok);

    let kappa = covering_degree(&m, &gen, &c, &HomElement::x(&t), 6).unwrap();
    assert_eq!(kappa, Some(2));

    let report = classify(&m, &gen, n, 0).unwrap();
    let DichotomyResult::Constrained { r_empirical, r_bound } = report.result else {
        panic!("expected constrained, got {:?}", report.result);
    };
    assert_eq!(r_empirical, 2);
    assert!(r_empirical <= r_bound);

    let stats = predicted_r(&m, &gen).unwrap();
    assert!(stats.applicable);
    assert_eq!(stats.predicted, Some(2));
}

#[test]
fn split_shape_over_gf9_is_not_just_infinite() {
    let t = gf9();
    let n = 14usize;
    let m = MaxClassAlgebra::metabelian(&t, n).unwrap();
    let l1 = FSubspace::span_elements(
        t.ambient(2),
        &[
            vec![t.one(), t.zero()],
            vec![t.zero(), t.one()],
            vec![t.zero(), t.alpha()],
        ],
    )
    .unwrap();
    let gen = GeneratingSpace::new(&m, l1).unwrap();
    let report = classify(&m, &gen, n, 0).unwrap();
    let DichotomyResult::NotJustInfinite { ideal_dims, .. } = report.result else {
        panic!("expected not-just-infinite, got {:?}", report.result);
    };
    assert!(ideal_dims.iter().all(|&d| d == 1));
}

#[test]
fn two_step_centraliser_matches_bruteforce_kernel_over_gf3() {
    // compare the closed-form kernel line against scanning all of P^1(E)
    let t = gf3();
    let out = search_sequences(&t, 8, 2, 10_000_000).unwrap();
    let all_lines = gradedlie::maxclass::projective_lines(&t).unwrap();
    for seq in &out.sequences {
        let mut m = MaxClassAlgebra::from_centralisers(&t, seq, 8).unwrap();
        assert!(m.validate().ok);
        for i in 2..=6usize {
            let extracted = m.two_step_centraliser(i).unwrap();
            let mut kernel_lines = Vec::new();
            for line in &all_lines {
                let v = HomElement::degree1(line.a().clone(), line.b().clone());
                let r = m.bracket(&HomElement::basis(&t, i), &v).unwrap();
                if r.is_zero() {
                    kernel_lines.push(line.clone());
                }
            }
            assert_eq!(kernel_lines, vec![extracted]);
        }
    }
}
