//! Acceptance suite. Each test is one criterion, runs at its stated
//! tolerance, and prints one PASS line (visible with --nocapture); the
//! harness line per test is the pass/fail record.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use arithdyn_core::dynamics::{
    alpha_estimates, gcd_height_sequence, iterate_orbit, lang_siegel_sequence, ratio_sequence,
    OrbitObservers, OrbitOptions, OrbitRecord,
};
use arithdyn_core::exactnum::{gcd_many, BigInt, BigRat};
use arithdyn_core::geometry::{conjugate, LinearAut, Morphism, MorphismReport, ProjPoint};
use arithdyn_core::heights::{
    global_height_subscheme, naive_height, DivisorData, Place, SubschemeData,
};
use arithdyn_core::multiplicity::{
    e_f_at, e_minus_p1, fiber_ideal, local_length, pullback_mult_check,
};
use arithdyn_core::poly::{parse_form, parse_poly, HomogeneousForm};

fn vars3() -> Vec<String> {
    vec!["X".into(), "Y".into(), "Z".into()]
}

fn vars2() -> Vec<String> {
    vec!["X".into(), "Y".into()]
}

fn morphism(texts: &[&str], vars: &[String]) -> Morphism {
    Morphism::new(texts.iter().map(|t| parse_form(t, vars).unwrap()).collect()).unwrap()
}

fn pt(coords: &[i64]) -> ProjPoint {
    ProjPoint::from_i64(coords).unwrap()
}

/// The conjugated cube map: sigma^-1 o (X^3 : Y^3 : Z^3) o sigma with
/// sigma = (X+Y+Z : 2X+Y+Z : X-Y+Z).
fn conjugated_cube_map() -> Morphism {
    let g = morphism(&["X^3", "Y^3", "Z^3"], &vars3());
    let sigma = LinearAut::from_i64(&[&[1, 1, 1], &[2, 1, 1], &[1, -1, 1]]).unwrap();
    conjugate(&g, &sigma).unwrap()
}

fn plain_orbit(f: &Morphism, x: &ProjPoint, n_max: u32) -> Vec<OrbitRecord> {
    let run = iterate_orbit(
        f,
        x,
        &OrbitOptions {
            n_max,
            ..OrbitOptions::default()
        },
        &OrbitObservers::default(),
    )
    .unwrap();
    assert!(run.halt.is_none(), "orbit halted early: {:?}", run.halt);
    run.records
}

/// Reference log-coordinate table for the conjugated cube map from
/// (2 : 3 : -4), n = 1..6, fifteen significant digits.
const REFERENCE_TABLE: [[f64; 3]; 6] = [
    [3.25809653802148, 4.14313472639153, 4.47733681447821],
    [9.88745979145893, 13.7917945433468, 13.8117474864837],
    [29.6625317940388, 42.7616764551608, 42.7616785021394],
    [88.9875953821169, 129.671323726602, 129.671323726602],
    [266.962786146351, 390.400265540926, 390.400265540926],
    [800.888358439052, 1172.58709098390, 1172.58709098390],
];

fn log_coords(p: &ProjPoint) -> Vec<f64> {
    p.coords()
        .iter()
        .map(|c| arithdyn_core::exactnum::log_abs(c).unwrap())
        .collect()
}

#[test]
fn criterion_01_table_reproduction() {
    let started = Instant::now();
    let f = conjugated_cube_map();
    let x = pt(&[2, 3, -4]);

    // structural check of the first step
    assert_eq!(f.apply(&x).unwrap(), pt(&[26, 63, -88]));

    let records = plain_orbit(&f, &x, 6);
    let mut checked = 0;
    for (row, expected) in REFERENCE_TABLE.iter().enumerate() {
        let got = log_coords(&records[row + 1].point);
        for (col, (g, e)) in got.iter().zip(expected.iter()).enumerate() {
            assert!(
                (g - e).abs() <= 1e-9,
                "n = {}, column {}: got {:.15}, want {:.15}",
                row + 1,
                col,
                g,
                e
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 18);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {:?}", elapsed);
    println!("ACCEPTANCE 01 table reproduction: PASS (18/18 cells, {:?})", elapsed);
}

#[test]
fn criterion_02_lang_siegel_limit() {
    let started = Instant::now();
    let f = conjugated_cube_map();
    let records = plain_orbit(&f, &pt(&[2, 3, -4]), 8);
    let seq = lang_siegel_sequence(&records, 0);
    let last = seq
        .iter()
        .find(|p| p.n == 8)
        .and_then(|p| p.value)
        .expect("coordinate a(8) is nonzero");
    let limit = 3f64.ln() / 5f64.ln();
    assert!(
        (last - limit).abs() <= 0.01,
        "ratio at n = 8 is {:.7}, limit {:.7}",
        last,
        limit
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 02 Lang-Siegel limit: PASS (ratio {:.7} vs {:.7}, {:?})",
        last, limit, elapsed
    );
}

#[test]
fn criterion_03_exact_height_identity() {
    let mut rng = StdRng::seed_from_u64(0x9e3779b97f4a7c15);
    let mut tested = 0;
    let monos_by_degree: Vec<Vec<Vec<u32>>> = (0..=3)
        .map(|d| monomials_of_degree(3, d))
        .collect();
    while tested < 1000 {
        let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(-999..=999)).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let x = pt(&coords);
        let degree = rng.gen_range(1..=3u32);
        let monos = &monos_by_degree[degree as usize];
        let coeffs: Vec<i64> = (0..monos.len()).map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let form = HomogeneousForm::from_terms(
            3,
            monos
                .iter()
                .cloned()
                .zip(coeffs.iter().map(|&c| BigRat::from(BigInt::from(c))))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let divisor = DivisorData::new(form).unwrap();
        let subscheme = SubschemeData::new(vec![divisor.clone()]).unwrap();
        let Ok(total) = global_height_subscheme(&x, &subscheme) else {
            continue; // point on the divisor; resample
        };
        let expected = divisor.degree() as f64 * naive_height(&x);
        assert!(
            (total - expected).abs() <= 1e-9,
            "case {}: sum {} vs deg*h {}",
            tested,
            total,
            expected
        );
        tested += 1;
    }
    println!("ACCEPTANCE 03 exact height identity: PASS (1000 random pairs)");
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var == nvars - 1 {
            cur[var] = left;
            out.push(cur.clone());
            cur[var] = 0;
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            rec(nvars, left - e, var + 1, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    rec(nvars, degree, 0, &mut cur, &mut out);
    out
}

#[test]
fn criterion_04_multiplicity_ground_truths() {
    // the three frozen quotient lengths
    let names: Vec<String> = vec!["u".into(), "v".into()];
    let ideal = |texts: &[&str]| {
        arithdyn_core::multiplicity::LocalIdeal::new(
            texts.iter().map(|t| parse_poly(t, &names).unwrap()).collect(),
            vec![BigRat::zero(), BigRat::zero()],
        )
        .unwrap()
    };
    assert_eq!(local_length(&ideal(&["u^3", "v^3"]), 64).unwrap().value, 9);
    assert_eq!(local_length(&ideal(&["u^3", "v^3+v"]), 64).unwrap().value, 3);
    assert_eq!(local_length(&ideal(&["u-v", "v"]), 64).unwrap().value, 1);

    // line fast path versus the general quotient on 100 random cases
    let mut rng = StdRng::seed_from_u64(0x51ab3);
    let mut agreed = 0;
    while agreed < 100 {
        let Some(f) = random_p1_morphism(&mut rng) else { continue };
        let x = random_p1_point(&mut rng);
        if f.apply(&x).is_err() {
            continue;
        }
        let fast = e_f_at(&f, &x).unwrap();
        let ideal = fiber_ideal(&f, &x).unwrap();
        let slow = local_length(&ideal, 64).unwrap().value;
        assert_eq!(fast, slow, "map {:?} at {}", f, x);
        agreed += 1;
    }
    println!("ACCEPTANCE 04 multiplicity ground truths: PASS (9/3/1 and 100 cross-checks)");
}

fn random_p1_morphism(rng: &mut StdRng) -> Option<Morphism> {
    let v = vars2();
    // a third of the samples are conjugated power maps, so ramified
    // rational points actually appear
    if rng.gen_range(0..3) == 0 {
        let d = rng.gen_range(2..=3u32);
        let power = morphism(&[&format!("X^{}", d), &format!("Y^{}", d)], &v);
        let m: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        let sigma = LinearAut::from_i64(&[&[m[0], m[1]], &[m[2], m[3]]]).ok()?;
        return conjugate(&power, &sigma).ok();
    }
    let d = rng.gen_range(2..=3u32);
    let monos = monomials_of_degree(2, d);
    let mut forms = Vec::new();
    for _ in 0..2 {
        let coeffs: Vec<i64> = (0..monos.len()).map(|_| rng.gen_range(-5..=5)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            return None;
        }
        forms.push(
            HomogeneousForm::from_terms(
                2,
                monos
                    .iter()
                    .cloned()
                    .zip(coeffs.iter().map(|&c| BigRat::from(BigInt::from(c))))
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        );
    }
    let f = Morphism::new(forms).ok()?;
    match arithdyn_core::geometry::validate_morphism(&f).ok()? {
        MorphismReport::Certified => Some(f),
        _ => None,
    }
}

fn random_p1_point(rng: &mut StdRng) -> ProjPoint {
    loop {
        let a = rng.gen_range(-6i64..=6);
        let b = rng.gen_range(-6i64..=6);
        if (a, b) != (0, 0) {
            return pt(&[a, b]);
        }
    }
}

#[test]
fn criterion_05_chain_rule() {
    let mut rng = StdRng::seed_from_u64(0xc4a1);

    // 100 pairs on the line
    let mut done = 0;
    while done < 100 {
        let (Some(f), Some(g)) = (random_p1_morphism(&mut rng), random_p1_morphism(&mut rng))
        else {
            continue;
        };
        let x = random_p1_point(&mut rng);
        let Ok(fx) = f.apply(&x) else { continue };
        let Ok(composed) = g.compose(&f) else { continue };
        let lhs = e_f_at(&composed, &x).unwrap();
        let rhs = e_f_at(&f, &x).unwrap() * e_f_at(&g, &fx).unwrap();
        assert_eq!(lhs, rhs, "line pair at {}", x);
        done += 1;
    }

    // 20 pairs on the plane, mixing unramified and heavily ramified points
    let v = vars3();
    let plane_maps = [
        morphism(&["X^2", "Y^2", "Z^2"], &v),
        morphism(&["X^2+Y*Z", "Y^2", "Z^2+X*Y"], &v),
        morphism(&["X^3", "Y^3+Y*Z^2", "Z^3"], &v),
        morphism(&["Y^2", "Z^2", "X^2"], &v),
        morphism(&["X^2-Y^2", "Y^2+Z^2", "Z^2"], &v),
    ];
    let points = [
        [0i64, 0, 1],
        [1, 1, 1],
        [1, 2, 3],
        [0, 1, 1],
        [2, -1, 1],
        [1, 0, 0],
    ];
    let mut done = 0;
    let mut idx = 0;
    while done < 20 {
        idx += 1;
        let f = &plane_maps[(idx * 7 + 3) % plane_maps.len()];
        let g = &plane_maps[(idx * 5 + 1) % plane_maps.len()];
        let x = pt(&points[idx % points.len()]);
        let Ok(fx) = f.apply(&x) else { continue };
        let Ok(composed) = g.compose(f) else { continue };
        let lhs = e_f_at(&composed, &x).unwrap();
        let rhs = e_f_at(f, &x).unwrap() * e_f_at(g, &fx).unwrap();
        assert_eq!(lhs, rhs, "plane pair #{} at {}", idx, x);
        done += 1;
    }
    println!("ACCEPTANCE 05 chain rule: PASS (100 line pairs, 20 plane pairs)");
}

#[test]
fn criterion_06_counterexample_ratios() {
    // monomial squaring map: the ratio is exactly 1 at every step
    let v = vars3();
    let f = morphism(&["X^2", "Y^2", "Z^2"], &v);
    let records = plain_orbit(&f, &pt(&[1, 1, 2]), 10);
    let target = SubschemeData::point(&pt(&[0, 0, 1]));
    let seq = ratio_sequence(&records, &target, &[Place::Infinite]);
    for point in &seq {
        let ratio = point.ratio.expect("h > 0 along this orbit");
        assert_eq!(ratio, 1.0, "monomial ratio at n = {}", point.n);
    }

    // translation map: slow logarithmic growth, ratio -> 1
    let f = morphism(&["X", "Y", "Z+X"], &v);
    let records = plain_orbit(&f, &pt(&[1, 1, 0]), 10_000);
    let seq = ratio_sequence(&records, &target, &[Place::Infinite]);
    let last = seq.last().unwrap();
    assert_eq!(last.n, 10_000);
    let ratio = last.ratio.expect("h > 0 for n >= 2");
    assert!(
        (ratio - 1.0).abs() <= 0.02,
        "translation ratio at n = 10^4 is {}",
        ratio
    );
    println!("ACCEPTANCE 06 counterexample ratios: PASS (monomial exact 1, translation {:.6})", ratio);
}

#[test]
fn criterion_07_generic_target_decay() {
    // a target point away from every periodic ramified locus of the map:
    // the local-height ratio must decay toward zero
    let v = vars3();
    let f = morphism(&["X^2", "Y^2", "Z^2"], &v);
    let records = plain_orbit(&f, &pt(&[1, 1, 2]), 10);
    let target = SubschemeData::point(&pt(&[1, 2, 3]));
    let seq = ratio_sequence(&records, &target, &[Place::Infinite]);
    let at_ten = seq
        .iter()
        .find(|p| p.n == 10)
        .and_then(|p| p.ratio)
        .expect("orbit avoids the target");
    assert!(at_ten <= 0.05, "ratio at n = 10 is {}", at_ten);
    println!("ACCEPTANCE 07 generic-target decay: PASS (ratio {:.6} <= 0.05)", at_ten);
}

#[test]
fn criterion_08_gcd_oracle_equivalence() {
    let v = vars3();
    let f = morphism(&["2*X", "3*Y", "Z"], &v);
    let records = plain_orbit(&f, &pt(&[1, 1, 1]), 200);
    let target = SubschemeData::new(vec![
        DivisorData::new(parse_form("X-Z", &v).unwrap()).unwrap(),
        DivisorData::new(parse_form("Y-Z", &v).unwrap()).unwrap(),
    ])
    .unwrap();
    // n = 0 sits on the target; the sequence starts at n = 1
    let seq = gcd_height_sequence(&records[1..], &target).unwrap();
    assert_eq!(seq.len(), 200);
    for point in &seq {
        let a = BigInt::from(2).pow(point.n) - BigInt::one();
        let b = BigInt::from(3).pow(point.n) - BigInt::one();
        let expected = gcd_many(&[a, b]).unwrap();
        assert_eq!(point.gcd, expected, "n = {}", point.n);
    }
    println!("ACCEPTANCE 08 gcd oracle equivalence: PASS (n <= 200, exact integers)");
}

#[test]
fn criterion_09_pullback_multiplicity_bound() {
    let mut rng = StdRng::seed_from_u64(0xbd01);
    let v = vars3();
    let maps = [
        morphism(&["X^2", "Y^2", "Z^2"], &v),
        morphism(&["X^3", "Y^3", "Z^3"], &v),
        morphism(&["X^3", "Y^3+Y*Z^2", "Z^3"], &v),
        morphism(&["X^2+Y*Z", "Y^2", "Z^2+X*Y"], &v),
        morphism(&["X^2", "Y^2+Z^2", "Y*Z"], &v),
    ];
    let mut checked = 0;
    while checked < 200 {
        let f = &maps[rng.gen_range(0..maps.len())];
        let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let x = pt(&coords);
        let Ok(image) = f.apply(&x) else { continue };
        let target = random_subscheme_through(&mut rng, &image);
        let check = pullback_mult_check(f, &target, &x).unwrap();
        assert!(
            check.holds,
            "bound fails: {:?} at {} target {:?}",
            check, x, target
        );
        checked += 1;
    }
    println!("ACCEPTANCE 09 pullback multiplicity bound: PASS (200 strict inequalities)");
}

/// A random subscheme through the given point: its minor-cut point scheme,
/// a random divisor through it, or both together.
fn random_subscheme_through(rng: &mut StdRng, y: &ProjPoint) -> SubschemeData {
    match rng.gen_range(0..3) {
        0 => SubschemeData::point(y),
        1 => SubschemeData::new(vec![random_divisor_through(rng, y)]).unwrap(),
        _ => {
            let mut gens = SubschemeData::point(y).generators().to_vec();
            gens.push(random_divisor_through(rng, y));
            SubschemeData::new(gens).unwrap()
        }
    }
}

/// G(X) * y_k^e - G(y) * X_k^e vanishes at y and is homogeneous of the
/// degree of G.
fn random_divisor_through(rng: &mut StdRng, y: &ProjPoint) -> DivisorData {
    let k = y.max_coord_index();
    let yk = y.coords()[k].clone();
    loop {
        let degree = rng.gen_range(1..=2u32);
        let monos = monomials_of_degree(3, degree);
        let coeffs: Vec<i64> = (0..monos.len()).map(|_| rng.gen_range(-3..=3)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let g = HomogeneousForm::from_terms(
            3,
            monos
                .iter()
                .cloned()
                .zip(coeffs.iter().map(|&c| BigRat::from(BigInt::from(c))))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let value = g.eval(y.coords()).unwrap();
        let mut xk_exps = vec![0u32; 3];
        xk_exps[k] = degree;
        let correction = HomogeneousForm::from_terms(3, vec![(xk_exps, value)]).unwrap();
        let scale = BigRat::from(yk.clone()).pow(degree as i32);
        let through = g.scale(&scale).add(&correction.neg()).unwrap();
        if through.is_zero() {
            continue;
        }
        return DivisorData::new(through).unwrap();
    }
}

#[test]
fn criterion_10_backward_multiplicity_sanity() {
    let started = Instant::now();
    let f = morphism(&["X^2", "Y^2"], &vars2());
    let budget = 1 << 20;

    for step in e_minus_p1(&f, &pt(&[0, 1]), 8, budget).unwrap() {
        assert!((step.root - 2.0).abs() <= 1e-9, "y = 0, n = {}", step.n);
    }
    for step in e_minus_p1(&f, &pt(&[1, 0]), 8, budget).unwrap() {
        assert!((step.root - 2.0).abs() <= 1e-9, "y = inf, n = {}", step.n);
    }
    for step in e_minus_p1(&f, &pt(&[1, 1]), 8, budget).unwrap() {
        assert!((step.root - 1.0).abs() <= 1e-9, "y = 1, n = {}", step.n);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {:?}", elapsed);
    println!("ACCEPTANCE 10 backward multiplicity sanity: PASS ({:?})", elapsed);
}

#[test]
fn alpha_ratio_estimator_reads_three_on_the_reference_orbit() {
    // supporting check: the successive-ratio estimator on the reference
    // orbit approaches the degree
    let f = conjugated_cube_map();
    let records = plain_orbit(&f, &pt(&[2, 3, -4]), 6);
    let est = alpha_estimates(&records);
    let (n, value) = *est.ratio.last().unwrap();
    assert_eq!(n, 5);
    assert!((value - 3.0).abs() < 0.01, "ratio estimator {}", value);
}
