//! Runs the selected suites and assembles the report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use vol3_core::congruence::{
    commensurability_class, enumerate_image, isotropic_witness, omega_at_pell, schreier_kernel_generators,
    su_membership, KernelChecker, SUContext,
};
use vol3_core::funcfield::Specialization;
use vol3_core::linalg::signature_of_diagonal;
use vol3_core::numbers::{rat, QuadElem};
use vol3_core::pell::{paper_table, pell_solution, select_prime_sequence, PrimeSelection, SkipReason};
use vol3_core::ring::Ring;
use vol3_core::systole::systole_report;
use vol3_core::vol3::{
    build_left_regular, compute_invariant_form_j, m_form, omega_gaussian, omega_generators, parse_constants,
    rho_generators, rho_invariant_forms, search_spanning_words, verify_double_conjugacy, verify_presentation,
    vol3_generator_words, GroupWord, PresentationReport, APPENDIX_SHA256, APPENDIX_TEXT, DEFAULT_MAX_WORD_LEN,
};

use crate::claims::{spec, Status, CLAIMS};
use crate::config::{RunConfig, Suite};
use crate::report::{ClaimRecord, TableRow, VerificationReport};
use crate::CliError;

type Outcome = (&'static str, Status, String);
type SuiteResult = Result<Vec<Outcome>, String>;

fn check(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn presentation_details(r: &PresentationReport) -> String {
    r.checks
        .iter()
        .map(|c| format!("{}: {}", c.name, if c.passed { "I" } else { "not I" }))
        .collect::<Vec<_>>()
        .join("; ")
}

fn run_transcription() -> SuiteResult {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let mut out = Vec::new();
    let parsed = parse_constants(APPENDIX_TEXT, APPENDIX_SHA256);
    out.push((
        "transcription.checksum",
        check(parsed.is_ok()),
        match &parsed {
            Ok(c) => format!("sha256 {}, format version {}", c.sha256, c.version),
            Err(err) => err.to_string(),
        },
    ));
    let om = omega_generators();
    let rho = rho_generators();
    let po = verify_presentation(&om).map_err(|x| e(&x))?;
    out.push(("transcription.omega-presentation", check(po.all_passed()), presentation_details(&po)));
    let pr = verify_presentation(&rho).map_err(|x| e(&x))?;
    out.push(("transcription.rho-presentation", check(pr.all_passed()), presentation_details(&pr)));
    let uo = om.has_unit_determinants().map_err(|x| e(&x))?;
    let ur = rho.has_unit_determinants().map_err(|x| e(&x))?;
    out.push((
        "transcription.unit-determinant",
        check(uo && ur),
        format!("det omega_t = 1: {uo}; det rho_t = 1: {ur}"),
    ));
    let m = m_form();
    let pres = ['u', 'c'].iter().all(|&g| rho.image(g).is_ok_and(|x| m.is_preserved_by(x)));
    out.push(("transcription.m-preserved", check(pres), format!("rho_t(g)* M_t rho_t(g) = M_t for u, c: {pres}")));
    // t = 1: s = 0, w = √3
    let spec1 = Specialization::new(
        rat(1, 1),
        3,
        QuadElem::from_ints(0, 0, 3).map_err(|x| e(&x))?,
        Some(QuadElem::from_ints(0, 1, 3).map_err(|x| e(&x))?),
    )
    .map_err(|x| e(&x))?;
    let m1 = m.matrix().try_map(|x| spec1.apply(x)).map_err(|x| e(&x))?;
    let sig = signature_of_diagonal(&m1).map_err(|x| e(&x))?;
    let rho1 = rho.try_map("Q(√3)", |x| spec1.apply(x)).map_err(|x| e(&x))?;
    let preserved1 = ['u', 'c']
        .iter()
        .all(|&g| rho1.image(g).is_ok_and(|x| x.transpose().mul(&m1).mul(x) == m1));
    out.push((
        "transcription.m1-signature",
        check(sig == (3, 1) && preserved1),
        format!("signature of M_1 = {sig:?}; rho_1 preserves M_1: {preserved1}"),
    ));
    Ok(out)
}

fn run_forms() -> SuiteResult {
    let mut out = Vec::new();
    let rf = rho_invariant_forms().map_err(|e| e.to_string())?;
    out.push((
        "forms.rho-invariant",
        check(rf.dimension == 1 && rf.m_in_span),
        format!("solution space dimension {}; M_t proportional: {}", rf.dimension, rf.m_in_span),
    ));
    match compute_invariant_form_j() {
        Ok(j) => {
            out.push((
                "forms.omega-free-variables",
                Status::Pass,
                format!("dimension {}; free entries {:?}", j.dimension, j.free_entries),
            ));
            out.push((
                "forms.det-square",
                check(j.det_sqrt.is_some()),
                match &j.det_sqrt {
                    Some(r) => format!("det J_t = ({r})^2"),
                    None => format!("det J_t = {} is not a square", j.det),
                },
            ));
            out.push((
                "forms.det-ratio",
                Status::Recorded,
                format!("ratio to 16(3-4t^2)^4/(1-4t^2)^2 is a square: {}", j.ratio_is_square),
            ));
        }
        Err(e) => {
            let msg = e.to_string();
            for id in ["forms.omega-free-variables", "forms.det-square", "forms.det-ratio"] {
                out.push((id, Status::Fail, msg.clone()));
            }
        }
    }
    Ok(out)
}

fn run_conjugacy(seed: u64) -> SuiteResult {
    Ok(vec![match verify_double_conjugacy(seed) {
        Ok(r) => (
            "conjugacy.double-rho",
            check(!r.det_p.is_zero_elem()),
            format!("invertible P found with seed {}; P omega_t(g) = (rho_t + rho_t)(g) P for u, c", r.seed),
        ),
        Err(e) => ("conjugacy.double-rho", Status::Fail, e.to_string()),
    }])
}

fn run_left_regular() -> SuiteResult {
    let s = search_spanning_words(DEFAULT_MAX_WORD_LEN).map_err(|e| e.to_string())?;
    let words: Vec<String> = s.words.iter().map(ToString::to_string).collect();
    let mut out = vec![(
        "left-regular.spanning-words",
        check(s.words.len() == 16 && !s.certificate_det.is_zero_elem()),
        format!("{} words ({} examined): {}", s.words.len(), s.examined, words.join(" ")),
    )];
    let lr = build_left_regular(&s.words).map_err(|e| e.to_string())?;
    out.push((
        "left-regular.homomorphism",
        check(lr.eta.dim() == 16 && lr.presentation.all_passed()),
        format!("dim {}; {}", lr.eta.dim(), presentation_details(&lr.presentation)),
    ));
    out.push((
        "left-regular.integrality",
        Status::Recorded,
        format!(
            "entries of eta_t(u), eta_t(c) in Z[t, s]: {}; tr eta_t(u) = {}; tr eta_t(c) = {}",
            lr.integral, lr.trace_u, lr.trace_c
        ),
    ));
    Ok(out)
}

struct ImageData {
    schreier: Vec<GroupWord>,
}

fn run_image(cap: usize) -> Result<(Vec<Outcome>, ImageData), String> {
    let om0 = omega_gaussian().map_err(|e| e.to_string())?;
    let ab = om0.from_words("Z[i]", &vol3_generator_words()).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    let img = match enumerate_image(&ab, cap) {
        Ok(img) => img,
        Err(e) => {
            let msg = e.to_string();
            for id in ["image.vol3-order", "image.orbifold-order", "image.schreier"] {
                out.push((id, Status::Fail, msg.clone()));
            }
            return Ok((out, ImageData { schreier: Vec::new() }));
        }
    };
    out.push(("image.vol3-order", check(img.order() == 320), format!("order {}", img.order())));
    out.push((
        "image.orbifold-order",
        Status::Recorded,
        match enumerate_image(&om0, cap) {
            Ok(full) => format!("order of the group generated by omega_0(u), omega_0(c): {}", full.order()),
            Err(e) => e.to_string(),
        },
    ));
    let gens = schreier_kernel_generators(&img, &ab).map_err(|e| e.to_string())?;
    let mut trivial = true;
    for w in &gens {
        let m = vol3_core::vol3::evaluate_word(w, &ab).map_err(|e| e.to_string())?;
        trivial &= m.is_identity();
    }
    out.push((
        "image.schreier",
        check(trivial && !gens.is_empty() && gens.len() <= 4 * img.order()),
        format!("{} Schreier generators, all omega_0-trivial: {trivial}", gens.len()),
    ));
    Ok((out, ImageData { schreier: gens }))
}

struct Arithmetic {
    selection: PrimeSelection,
}

fn run_pell(cfg: &RunConfig) -> SuiteResult {
    let mut out = Vec::new();
    let mut ok = true;
    let mut sols = Vec::new();
    for n in 1..=cfg.depth {
        match pell_solution(cfg.d, n) {
            Ok(s) => {
                ok &= s.satisfies_identity();
                sols.push(s);
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    out.push((
        "pell.identity",
        check(ok),
        format!("t_n^2 - {} y_n^2 = 1 for n = 1..{}, powering and recurrence agree", cfg.d, cfg.depth),
    ));
    out.push(match paper_table(cfg.d) {
        Some(table) => {
            let mut mismatches = Vec::new();
            let mut compared = 0;
            for &(n, t, y, _) in table.iter().filter(|r| r.0 <= cfg.depth) {
                compared += 1;
                let s = &sols[n as usize - 1];
                if s.t != BigInt::from(t) || s.y != BigInt::from(y) {
                    mismatches.push(n);
                }
            }
            (
                "pell.table",
                check(mismatches.is_empty()),
                format!("{compared} worked-example rows compared; mismatches at n = {mismatches:?}"),
            )
        }
        None => ("pell.table", Status::Recorded, format!("no worked example for d = {}", cfg.d)),
    });
    Ok(out)
}

fn run_primes(cfg: &RunConfig) -> Result<(Vec<Outcome>, Arithmetic), String> {
    let sel = select_prime_sequence(cfg.d, cfg.depth, cfg.prime_rule).map_err(|e| e.to_string())?;
    let mut out = vec![(
        "primes.lucas-pair",
        check(sel.lucas_pair.holds),
        format!("u + 1/u = {}, u * 1/u = {}", sel.lucas_pair.sum, sel.lucas_pair.product),
    )];
    out.push(match paper_table(cfg.d) {
        Some(table) => {
            let mut parts = Vec::new();
            let mut ok = true;
            for &(n, _, _, p) in table.iter().filter(|r| r.0 <= cfg.depth) {
                let rec = &sel.records[n as usize - 1];
                let member = rec.primitive_primes.contains(&BigInt::from(p));
                ok &= member;
                let set: Vec<String> = rec.primitive_primes.iter().map(ToString::to_string).collect();
                parts.push(format!("n={n}: {p} in {{{}}}: {member}", set.join(", ")));
            }
            ("primes.table-membership", check(ok), parts.join("; "))
        }
        None => (
            "primes.table-membership",
            Status::Recorded,
            format!("no worked example for d = {}", cfg.d),
        ),
    });
    let s_terms = vol3_core::pell::lucas_terms(cfg.d, cfg.depth).map_err(|e| e.to_string())?;
    let mut ok = true;
    for (i, r) in sel.rows.iter().enumerate() {
        ok &= r.p.bit(0) && (&r.t % &r.p).is_zero();
        ok &= (1..r.n as usize).all(|m| !(&s_terms[m] % &r.p).is_zero());
        if i > 0 {
            ok &= sel.rows[i - 1].p < r.p;
        }
    }
    let chosen: Vec<String> = sel.rows.iter().map(|r| format!("n={}: {}", r.n, r.p)).collect();
    let skipped: Vec<String> = sel
        .skipped
        .iter()
        .map(|s| {
            let why = match &s.reason {
                SkipReason::NoOddPrimitive => "no odd primitive prime".to_string(),
                SkipReason::TablePrimeUnusable(p) => format!("table prime {p} is not an odd primitive divisor"),
                SkipReason::NotIncreasing(p) => format!("{p} does not exceed the previous prime"),
            };
            format!("n={} ({why})", s.n)
        })
        .collect();
    out.push((
        "primes.sequence",
        check(ok),
        format!(
            "rule {}; selected {}; skipped {}",
            cfg.prime_rule,
            if chosen.is_empty() { "none".into() } else { chosen.join(", ") },
            if skipped.is_empty() { "none".into() } else { skipped.join(", ") }
        ),
    ));
    Ok((out, Arithmetic { selection: sel }))
}

fn run_su(cfg: &RunConfig, arith: &Arithmetic) -> SuiteResult {
    let mut member_ok = true;
    let mut class_ok = true;
    let mut witness_ok = true;
    let mut member = Vec::new();
    let mut class = Vec::new();
    let mut witness = Vec::new();
    for row in &arith.selection.rows {
        let n = row.n;
        let ctx = SUContext::at_pell(cfg.d, n).map_err(|e| e.to_string())?;
        let om = omega_at_pell(cfg.d, n).map_err(|e| e.to_string())?;
        let mut ok = true;
        for g in ['u', 'c'] {
            let m = om.image(g).map_err(|e| e.to_string())?;
            ok &= su_membership(m, &ctx).unwrap_or(false);
        }
        member_ok &= ok;
        member.push(format!("n={n}: {ok}"));
        let fc = commensurability_class(&ctx.j).map_err(|e| e.to_string())?;
        let sq = fc.rank == 8 && fc.square_witness.is_some();
        class_ok &= sq;
        class.push(format!(
            "n={n}: rank {}, det = {}{}",
            fc.rank,
            fc.det,
            fc.square_witness.as_ref().map(|r| format!(" = ({r})^2")).unwrap_or_default()
        ));
        let c = QuadElem::new(fc.det.clone(), rat(0, 1), cfg.d).map_err(|e| e.to_string())?;
        let w = isotropic_witness(&c, 8).map_err(|e| e.to_string())?;
        witness_ok &= w.isotropic;
        witness.push(format!("n={n}: x*Dx = {}", w.value));
    }
    let joined = |v: Vec<String>| if v.is_empty() { "no selected levels".to_string() } else { v.join("; ") };
    Ok(vec![
        ("su.membership", check(member_ok), joined(member)),
        ("su.det-class", check(class_ok), joined(class)),
        ("su.isotropic-witness", check(witness_ok), joined(witness)),
    ])
}

struct KernelRow {
    n: u32,
    diagram: bool,
    kernel: bool,
}

fn run_kernel(cfg: &RunConfig, arith: &Arithmetic, image: &ImageData) -> Result<(Vec<Outcome>, Vec<KernelRow>), String> {
    let mut rows = Vec::new();
    let mut diag = Vec::new();
    let mut kern = Vec::new();
    for row in &arith.selection.rows {
        let Some(p) = row.p.to_u64() else {
            diag.push(format!("n={}: p = {} exceeds 64 bits", row.n, row.p));
            rows.push(KernelRow { n: row.n, diagram: false, kernel: false });
            continue;
        };
        let (d_ok, k_ok) = match KernelChecker::new(cfg.d, row.n, p) {
            Ok(k) => {
                let mut all = !image.schreier.is_empty();
                for w in &image.schreier {
                    all &= k.contains(w).map_err(|e| e.to_string())?;
                }
                (k.diagram.hom_precondition && k.diagram.commutes, all)
            }
            Err(e) => {
                diag.push(format!("n={}: {e}", row.n));
                (false, false)
            }
        };
        diag.push(format!("(d, n, p) = ({}, {}, {p}): d*y^2 = -1 mod p and diagram commutes: {d_ok}", cfg.d, row.n));
        kern.push(format!("n={}: {} generators in Ker(pi_{p}): {k_ok}", row.n, image.schreier.len()));
        rows.push(KernelRow { n: row.n, diagram: d_ok, kernel: k_ok });
    }
    let d_ok = rows.iter().all(|r| r.diagram);
    let k_ok = rows.iter().all(|r| r.kernel);
    let joined = |v: Vec<String>| if v.is_empty() { "no selected levels".to_string() } else { v.join("; ") };
    Ok((
        vec![
            ("kernel.diagram", check(d_ok), joined(diag)),
            ("kernel.schreier-membership", check(k_ok), joined(kern)),
        ],
        rows,
    ))
}

fn run_systole(cfg: &RunConfig) -> Result<(Vec<Outcome>, BTreeMap<u32, String>), String> {
    let t = systole_report(cfg.d, cfg.depth, cfg.prime_rule).map_err(|e| e.to_string())?;
    let bounds: BTreeMap<u32, String> = t.rows.iter().map(|r| (r.n, format!("{:.12}", r.bound.value))).collect();
    let listed: Vec<String> = t.rows.iter().map(|r| format!("p={}: {:.6}", r.p, r.bound.value)).collect();
    Ok((
        vec![(
            "systole.bounds",
            check(t.increasing_beyond_threshold()),
            format!(
                "m = {}; {}",
                t.m,
                if listed.is_empty() { "no selected levels".into() } else { listed.join(", ") }
            ),
        )],
        bounds,
    ))
}

fn fail_suite(suite: Suite, msg: &str) -> Vec<Outcome> {
    CLAIMS
        .iter()
        .filter(|c| c.suite == suite)
        .map(|c| (c.id, Status::Fail, format!("error: {msg}")))
        .collect()
}

/// Runs every active suite. Independent suites run on separate threads;
/// the report order is fixed by the claim registry.
pub fn run_suite(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    cfg.validate()?;
    let active = cfg.active_suites();
    let on = |s: Suite| active.contains(&s);
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut timing = Vec::new();
    let timed = |name: &'static str, f: &dyn Fn() -> SuiteResult| {
        let start = Instant::now();
        let r = f();
        (name, start.elapsed(), r)
    };

    let needs_arith = [Suite::Pell, Suite::Primes, Suite::Su, Suite::Kernel, Suite::Systole]
        .iter()
        .any(|&s| on(s));
    let needs_image = on(Suite::Image) || on(Suite::Kernel);

    let (sym, image, arith) = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        if on(Suite::Transcription) {
            handles.push((Suite::Transcription, scope.spawn(|| timed("transcription", &run_transcription))));
        }
        if on(Suite::Forms) {
            handles.push((Suite::Forms, scope.spawn(|| timed("forms", &run_forms))));
        }
        if on(Suite::Conjugacy) {
            let seed = cfg.seed;
            handles.push((Suite::Conjugacy, scope.spawn(move || timed("conjugacy", &|| run_conjugacy(seed)))));
        }
        if on(Suite::LeftRegular) {
            handles.push((Suite::LeftRegular, scope.spawn(|| timed("left-regular", &run_left_regular))));
        }
        let image = needs_image.then(|| {
            scope.spawn(|| {
                let start = Instant::now();
                (start, run_image(cfg.cap))
            })
        });
        let arith = needs_arith.then(|| {
            scope.spawn(|| {
                let start = Instant::now();
                let pell = if on(Suite::Pell) { Some(run_pell(cfg)) } else { None };
                let primes = run_primes(cfg);
                let systole = if on(Suite::Systole) { Some(run_systole(cfg)) } else { None };
                let su = match (&primes, on(Suite::Su)) {
                    (Ok((_, a)), true) => Some(run_su(cfg, a)),
                    (Err(e), true) => Some(Err(e.clone())),
                    _ => None,
                };
                (start.elapsed(), pell, primes, systole, su)
            })
        });
        let sym: Vec<_> = handles
            .into_iter()
            .map(|(s, h)| (s, h.join().expect("suite thread panicked")))
            .collect();
        let image = image.map(|h| {
            let (start, r) = h.join().expect("image thread panicked");
            (start.elapsed(), r)
        });
        let arith = arith.map(|h| h.join().expect("arithmetic thread panicked"));
        (sym, image, arith)
    });

    for (suite, (name, dt, r)) in sym {
        timing.push((name.to_string(), dt));
        outcomes.extend(r.unwrap_or_else(|e| fail_suite(suite, &e)));
    }
    let mut image_data = None;
    if let Some((dt, r)) = image {
        timing.push(("image".into(), dt));
        match r {
            Ok((o, data)) => {
                if on(Suite::Image) {
                    outcomes.extend(o);
                }
                image_data = Some(data);
            }
            Err(e) => {
                if on(Suite::Image) {
                    outcomes.extend(fail_suite(Suite::Image, &e));
                }
            }
        }
    }

    let mut table = Vec::new();
    if let Some((dt, pell, primes, systole, su)) = arith {
        timing.push(("arithmetic".into(), dt));
        if let Some(r) = pell {
            outcomes.extend(r.unwrap_or_else(|e| fail_suite(Suite::Pell, &e)));
        }
        let mut bounds = BTreeMap::new();
        if let Some(r) = systole {
            match r {
                Ok((o, b)) => {
                    outcomes.extend(o);
                    bounds = b;
                }
                Err(e) => outcomes.extend(fail_suite(Suite::Systole, &e)),
            }
        }
        if let Some(r) = su {
            outcomes.extend(r.unwrap_or_else(|e| fail_suite(Suite::Su, &e)));
        }
        match primes {
            Ok((o, arith)) => {
                if on(Suite::Primes) {
                    outcomes.extend(o);
                }
                let mut kernel_rows = Vec::new();
                if on(Suite::Kernel) {
                    let start = Instant::now();
                    let empty = ImageData { schreier: Vec::new() };
                    match run_kernel(cfg, &arith, image_data.as_ref().unwrap_or(&empty)) {
                        Ok((o, rows)) => {
                            outcomes.extend(o);
                            kernel_rows = rows;
                        }
                        Err(e) => outcomes.extend(fail_suite(Suite::Kernel, &e)),
                    }
                    timing.push(("kernel".into(), start.elapsed()));
                }
                table = build_table(&arith, &kernel_rows, &bounds);
            }
            Err(e) => {
                for s in [Suite::Primes, Suite::Kernel] {
                    if on(s) {
                        outcomes.extend(fail_suite(s, &e));
                    }
                }
            }
        }
    }

    let mut report = VerificationReport::empty(cfg.clone());
    report.timing = timing;
    report.table = table;
    report.claims = assemble(&active, outcomes);
    Ok(report)
}

fn build_table(arith: &Arithmetic, kernel: &[KernelRow], bounds: &BTreeMap<u32, String>) -> Vec<TableRow> {
    let selected: BTreeMap<u32, &BigInt> = arith.selection.rows.iter().map(|r| (r.n, &r.p)).collect();
    let sols = vol3_core::pell::pell_sequence(arith.selection.d, arith.selection.records.len() as u32)
        .unwrap_or_default();
    arith
        .selection
        .records
        .iter()
        .zip(sols)
        .map(|(rec, sol)| {
            let k = kernel.iter().find(|k| k.n == rec.n);
            TableRow {
                n: rec.n,
                t_n: sol.t.to_string(),
                y_n: sol.y.to_string(),
                p_n: selected.get(&rec.n).map(|p| p.to_string()),
                primitive_set: rec.primitive_primes.iter().map(ToString::to_string).collect(),
                diagram_ok: k.map(|k| k.diagram),
                kernel_ok: k.map(|k| k.kernel),
                systole_bound: bounds.get(&rec.n).cloned(),
            }
        })
        .collect()
}

/// Orders outcomes by the registry; each active claim appears exactly once.
fn assemble(active: &BTreeSet<Suite>, outcomes: Vec<Outcome>) -> Vec<ClaimRecord> {
    let mut by_id: BTreeMap<&str, (Status, String)> = BTreeMap::new();
    for (id, st, det) in outcomes {
        by_id.insert(id, (st, det));
    }
    CLAIMS
        .iter()
        .filter(|c| active.contains(&c.suite))
        .map(|c| {
            let (status, details) = by_id
                .remove(c.id)
                .unwrap_or((Status::Fail, "not evaluated".to_string()));
            let status = if !c.required && status == Status::Pass { Status::Recorded } else { status };
            debug_assert!(spec(c.id).is_some());
            ClaimRecord {
                id: c.id.to_string(),
                anchor: c.anchor.to_string(),
                required: c.required,
                status,
                details,
            }
        })
        .collect()
}
