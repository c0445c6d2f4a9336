//! Acceptance criteria 1-13. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use vol3_core::congruence::{
    commensurability_class, diagram_commutes, enumerate_image, isotropic_witness, omega_at_pell,
    schreier_kernel_generators, su_membership, KernelChecker, SUContext,
};
use vol3_core::linalg::{det_field, inverse, ExactMatrix};
use vol3_core::numbers::{rat, QuadElem};
use vol3_core::pell::{pell_solution, primitive_prime_divisors};
use vol3_core::ring::{Field, Ring};
use vol3_core::systole::{congruence_systole_lower_bound, trace_length_lower_bound};
use vol3_core::vol3::{
    build_left_regular, compute_invariant_form_j, evaluate_word, omega_gaussian, omega_generators,
    rho_generators, rho_invariant_forms, search_spanning_words, verify_double_conjugacy, verify_presentation,
    vol3_generator_words, RepGenerators, DEFAULT_MAX_WORD_LEN,
};

type Check = Result<String, String>;
type Criterion = (u32, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let dt = start.elapsed();
    ensure(dt < limit, format!("took {dt:.1?}, limit {limit:?}"))
}

/// a = u²c, b = (aua)⁻¹u multiplied out directly, then the relators as
/// plain matrix products.
fn relators_by_hand<E: Field + Send + Sync>(rep: &RepGenerators<E>) -> Result<bool, String> {
    let u = rep.image('u').map_err(|e| e.to_string())?.clone();
    let c = rep.image('c').map_err(|e| e.to_string())?.clone();
    let inv = |m: &ExactMatrix<E>| inverse(m).map_err(|e| e.to_string())?.ok_or("singular".to_string());
    let a = u.mul(&u).mul(&c);
    let b = inv(&a.mul(&u).mul(&a))?.mul(&u);
    let (ai, bi) = (inv(&a)?, inv(&b)?);
    let prod = |ms: &[&ExactMatrix<E>]| ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.mul(m));
    let r1 = prod(&[&a, &a, &b, &b, &ai, &bi, &ai, &b, &b]);
    let r2 = prod(&[&a, &bi, &a, &bi, &a, &b, &a, &a, &a, &b]);
    Ok(u.pow(4).is_identity() && c.pow(2).is_identity() && r1.is_identity() && r2.is_identity())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let om = omega_generators();
    let rho = rho_generators();
    let po = verify_presentation(&om).map_err(|e| e.to_string())?;
    let pr = verify_presentation(&rho).map_err(|e| e.to_string())?;
    ensure(po.all_passed(), "omega_t relators fail")?;
    ensure(pr.all_passed(), "rho_t relators fail")?;
    ensure(relators_by_hand(&om)?, "omega_t direct products fail")?;
    ensure(relators_by_hand(&rho)?, "rho_t direct products fail")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("omega_t and rho_t satisfy u^4, c^2 and both relators ({:.1?})", start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let rf = rho_invariant_forms().map_err(|e| e.to_string())?;
    ensure(rf.dimension == 1, format!("rho form space has dimension {}", rf.dimension))?;
    ensure(rf.m_in_span, "M_t not proportional to the rho-invariant form")?;
    let j = compute_invariant_form_j().map_err(|e| e.to_string())?;
    ensure(j.dimension == 4, format!("omega form space has dimension {}", j.dimension))?;
    // J_t must be omega-invariant and Hermitian.
    let om = omega_generators();
    for g in ['u', 'c'] {
        let m = om.image(g).map_err(|e| e.to_string())?;
        ensure(m.conj_transpose().mul(j.j.matrix()).mul(m) == *j.j.matrix(), format!("J_t not preserved by omega_t({g})"))?;
    }
    ensure(j.j.matrix().conj_transpose() == *j.j.matrix(), "J_t not Hermitian")?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("dim 1 for rho (contains M_t), dim 4 for omega ({:.1?})", start.elapsed()))
}

fn criterion_3() -> Check {
    let j = compute_invariant_form_j().map_err(|e| e.to_string())?;
    ensure(!j.det.is_zero_elem(), "det J_t = 0")?;
    let r = j.det_sqrt.clone().ok_or("det J_t is not a square in Q(t)")?;
    ensure(r.mul(&r) == j.det, "square root does not square to det J_t")?;
    // Second route: determinant of J_t by field elimination over Q(t, s, w).
    let d2 = det_field(j.j.matrix()).map_err(|e| e.to_string())?;
    let lifted = vol3_core::funcfield::TowerElem::from_base(j.det.clone());
    ensure(d2 == lifted, "Bareiss and field determinants disagree")?;
    Ok(format!(
        "det J_t = ({r})^2; ratio to 16(3-4t^2)^4/(1-4t^2)^2 is a square: {} (recorded)",
        j.ratio_is_square
    ))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let res = verify_double_conjugacy(42).map_err(|e| e.to_string())?;
    let om = omega_generators();
    let rho = rho_generators();
    let det = det_field(&res.p).map_err(|e| e.to_string())?;
    ensure(!det.is_zero_elem(), "det P = 0")?;
    for g in ['u', 'c'] {
        let r = rho.image(g).map_err(|e| e.to_string())?;
        let rr = ExactMatrix::block_diag(&[r, r]);
        let lhs = res.p.mul(om.image(g).map_err(|e| e.to_string())?);
        ensure(lhs == rr.mul(&res.p), format!("P omega_t({g}) != (rho_t + rho_t)({g}) P"))?;
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("invertible 8x8 P over Q(t, s, w), seed 42 ({:.1?})", start.elapsed()))
}

const TABLE_D3: [(u32, i64, i64, i64); 5] = [(1, 2, 1, 2), (2, 7, 4, 7), (3, 26, 15, 13), (4, 97, 56, 97), (5, 362, 209, 181)];
const TABLE_D5: [(u32, i64, i64, i64); 5] = [
    (1, 9, 4, 3),
    (2, 161, 72, 7),
    (3, 2889, 1292, 107),
    (4, 51841, 23184, 1103),
    (5, 930249, 416020, 2521),
];

fn criterion_5() -> Check {
    let start = Instant::now();
    for (d, table) in [(3, &TABLE_D3), (5, &TABLE_D5)] {
        for &(n, t, y, _) in table.iter() {
            let s = pell_solution(d, n).map_err(|e| e.to_string())?;
            ensure(s.t == BigInt::from(t) && s.y == BigInt::from(y), format!("d={d} n={n}: got ({}, {})", s.t, s.y))?;
            ensure(t * t - d * y * y == 1, format!("d={d} n={n}: table row is not a Pell solution"))?;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("10 rows for d = 3, 5 reproduced exactly ({:.1?})", start.elapsed()))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for (d, table) in [(3, &TABLE_D3), (5, &TABLE_D5)] {
        for &(n, t, _, p) in table.iter() {
            let rec = primitive_prime_divisors(d, n).map_err(|e| e.to_string())?;
            ensure(rec.s_n == BigInt::from(2 * t), format!("d={d} n={n}: S_n = {}", rec.s_n))?;
            ensure(rec.primitive_primes.contains(&BigInt::from(p)), format!("d={d} n={n}: {p} not primitive"))?;
            // Oracle: p divides 2 t_n and no earlier 2 t_m.
            ensure((2 * t) % p == 0, format!("{p} does not divide 2t_{n}"))?;
            for &(m, tm, _, _) in table.iter().filter(|r| r.0 < n) {
                ensure((2 * tm) % p != 0, format!("d={d}: {p} divides 2t_{m}"))?;
            }
            if d == 3 {
                let want: BTreeSet<BigInt> = [BigInt::from(p)].into();
                ensure(rec.primitive_primes == want, format!("d=3 n={n}: set {:?}", rec.primitive_primes))?;
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("every table prime is primitive; d=3 sets are {{2}},{{7}},{{13}},{{97}},{{181}} ({:.1?})", start.elapsed()))
}

fn ab_image() -> Result<RepGenerators<vol3_core::numbers::GaussianInt>, String> {
    let om0 = omega_gaussian().map_err(|e| e.to_string())?;
    om0.from_words("Z[i]", &vol3_generator_words()).map_err(|e| e.to_string())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let ab = ab_image()?;
    let img = enumerate_image(&ab, 1_000_000).map_err(|e| e.to_string())?;
    ensure(img.order() == 320, format!("order {}", img.order()))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("|omega_0(vol3)| = 320 ({:.1?})", start.elapsed()))
}

const TRIPLES: [(i64, u32, u64); 4] = [(3, 2, 7), (3, 3, 13), (5, 1, 3), (5, 2, 7)];

fn criterion_8() -> Check {
    let start = Instant::now();
    let ab = ab_image()?;
    let img = enumerate_image(&ab, 1_000_000).map_err(|e| e.to_string())?;
    let gens = schreier_kernel_generators(&img, &ab).map_err(|e| e.to_string())?;
    ensure(!gens.is_empty(), "no Schreier generators")?;
    for w in &gens {
        let m = evaluate_word(w, &ab).map_err(|e| e.to_string())?;
        ensure(m.is_identity(), format!("{w} is not in Ker omega_0"))?;
    }
    for (d, n, p) in TRIPLES {
        let s = pell_solution(d, n).map_err(|e| e.to_string())?;
        let pb = BigInt::from(p);
        ensure((&s.t % &pb).is_zero(), format!("{p} does not divide t_{n}"))?;
        ensure(((BigInt::from(d) * &s.y * &s.y + 1u32) % &pb).is_zero(), format!("d y^2 != -1 mod {p}"))?;
        let dc = diagram_commutes(d, n, p).map_err(|e| e.to_string())?;
        ensure(dc.hom_precondition && dc.commutes, format!("diagram fails at ({d}, {n}, {p})"))?;
        let k = KernelChecker::new(d, n, p).map_err(|e| e.to_string())?;
        for w in &gens {
            ensure(k.contains(w).map_err(|e| e.to_string())?, format!("{w} not in Ker pi_{p} at ({d}, {n})"))?;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} Schreier generators in Ker pi_p at all four triples ({:.1?})", gens.len(), start.elapsed()))
}

fn criterion_9() -> Check {
    for (d, n, _) in TRIPLES {
        let ctx = SUContext::at_pell(d, n).map_err(|e| e.to_string())?;
        let om = omega_at_pell(d, n).map_err(|e| e.to_string())?;
        for g in ['u', 'c'] {
            let m = om.image(g).map_err(|e| e.to_string())?;
            ensure(m.entries().iter().all(|x| x.is_integral()), format!("({d}, {n}): omega({g}) not over O_d"))?;
            ensure(su_membership(m, &ctx).map_err(|e| e.to_string())?, format!("({d}, {n}): omega({g}) not in SU"))?;
            ensure(m.conj_transpose().mul(&ctx.j.matrix().mul(m)) == *ctx.j.matrix(), "M* J M != J")?;
        }
    }
    Ok("omega_{t_n}(u), omega_{t_n}(c) in SU(J_{t_n}; O_d) for all four triples".into())
}

fn criterion_10() -> Check {
    let mut dets = Vec::new();
    for (d, n, _) in TRIPLES {
        let ctx = SUContext::at_pell(d, n).map_err(|e| e.to_string())?;
        let class = commensurability_class(&ctx.j).map_err(|e| e.to_string())?;
        dets.push(QuadElem::new(class.det.clone(), rat(0, 1), d).map_err(|e| e.to_string())?);
    }
    // The limit covers the witness evaluation; J_{t_n} is setup shared with criterion 9.
    let start = Instant::now();
    for c in &dets {
        let w = isotropic_witness(c, 8).map_err(|e| e.to_string())?;
        ensure(w.isotropic && w.value.is_zero_elem(), format!("x*Dx = {}", w.value))?;
        // By hand: 1·1·1 + 1·(−1)·1 = 0.
        let one = c.one_like();
        ensure(one.add(&one.neg()).is_zero_elem(), "1 - 1 != 0")?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("x = (1,1,0,...,0) is isotropic for diag(1,-1,-det J,1,...,1) ({:.1?})", start.elapsed()))
}

/// √2·arccosh(2) to 40 digits (100-digit reference, truncated).
const SQRT2_ACOSH2: f64 = 1.862_459_718_905_424_354_524_676_755_760_698;

fn criterion_11() -> Check {
    let start = Instant::now();
    let m = 8;
    let mut prev = 0.0;
    for p in [3u64, 5, 7, 11, 13, 17, 19, 97, 181, 1_000, 10_007, 1_000_003, 1_000_000_007] {
        let b = congruence_systole_lower_bound(p, m).map_err(|e| e.to_string())?.value;
        ensure(b >= prev, format!("not monotone at p = {p}"))?;
        if p < 2 * m as u64 {
            ensure(b == 0.0, format!("nonzero below 2m at p = {p}"))?;
        }
        prev = b;
    }
    let t = trace_length_lower_bound(16.0, m).map_err(|e| e.to_string())?;
    ensure((t.value - SQRT2_ACOSH2).abs() < 1e-9, format!("trace bound {} vs {SQRT2_ACOSH2}", t.value))?;
    within(start, Duration::from_secs(1))?;
    let at_max = congruence_systole_lower_bound(1_000_000_000, m).map_err(|e| e.to_string())?.value;
    ensure(
        at_max > 10.0,
        format!(
            "monotone, zero below p = 16, trace bound ok; but the bound at p = 1e9 is {at_max:.6} <= 10 \
             (the bound is increasing, so no p <= 1e9 exceeds 10; it first reaches 10 near p = 7.69e12)"
        ),
    )?;
    Ok("all properties hold".into())
}

fn criterion_12() -> Check {
    let start = Instant::now();
    let s = search_spanning_words(DEFAULT_MAX_WORD_LEN).map_err(|e| e.to_string())?;
    ensure(s.words.len() == 16, format!("{} spanning words", s.words.len()))?;
    let lr = build_left_regular(&s.words).map_err(|e| e.to_string())?;
    ensure(lr.eta.dim() == 16, format!("dimension {}", lr.eta.dim()))?;
    ensure(lr.presentation.all_passed(), "eta_t relators fail")?;
    ensure(relators_by_hand(&lr.eta)?, "eta_t direct products fail")?;
    within(start, Duration::from_secs(900))?;
    Ok(format!("16-dim eta_t, relators pass, integral entries: {} (recorded) ({:.1?})", lr.integral, start.elapsed()))
}

fn criterion_13() -> Check {
    let bin = env!("CARGO_BIN_EXE_vol3");
    let run = || {
        Command::new(bin)
            .args(["verify", "--d", "3", "--depth", "5", "--seed", "42"])
            .env_remove("VOL3_OUT_DIR")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), format!("exit status {:?} / {:?}", a.status, b.status))?;
    ensure(!a.stdout.is_empty(), "empty report")?;
    ensure(a.stdout == b.stdout, "reports differ")?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
    ];
    let selected = criterion_list(&criteria);
    let mut failed = Vec::new();
    for &(n, f) in &selected {
        match f() {
            Ok(msg) => println!("PASS criterion {n}: {msg}"),
            Err(msg) => {
                println!("FAIL criterion {n}: {msg}");
                failed.push(n);
            }
        }
    }
    println!("acceptance: {} passed, {} failed {failed:?}", selected.len() - failed.len(), failed.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}

fn criterion_list(all: &[Criterion]) -> Vec<Criterion> {
    // ACCEPTANCE_ONLY=3,7 runs a subset.
    match std::env::var("ACCEPTANCE_ONLY") {
        Ok(s) => {
            let keep: BTreeSet<u32> = s.split(',').filter_map(|x| x.trim().parse().ok()).collect();
            all.iter().copied().filter(|(n, _)| keep.contains(n)).collect()
        }
        Err(_) => all.to_vec(),
    }
}
