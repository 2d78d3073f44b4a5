//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use silting_core::catalog::{self, AnyAlgebra};
use silting_core::module::{d_alpha_membership, d_sigma_membership, ext1, hom_dim, hom_space};
use silting_core::oracle::{enumerate_modules, enumerate_subspaces, idempotent_ideals_brute};
use silting_core::recollement::Recollement;
use silting_core::semiperfect::{lemma21_decompose, product_space};
use silting_core::silting::{
    canonical_presentation, check_conditions_ab, maps_factor_through_quotient, no_torsion_free_in_d_sigma,
    silting_verdict,
};
use silting_core::ttf::{enumerate_idempotent_ideals, trace_witness};
use silting_core::{Algebra, Field, Matrix, ModuleMap, ModuleRep, PrimeField, Semiperfect, Subspace};

type Gf = PrimeField;
type Res = Result<String, String>;

const SEED: u64 = 20;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime_catalog() -> Vec<(&'static str, Arc<Algebra<Gf>>)> {
    catalog::ENTRIES
        .iter()
        .filter_map(|e| e.build_prime().expect("catalog builds").map(|a| (e.name, a)))
        .collect()
}

fn oracle2(a: &Arc<Algebra<Gf>>) -> Vec<ModuleRep<Gf>> {
    enumerate_modules(a, 2).expect("oracle within the cap").modules
}

fn label_index(a: &Algebra<Gf>, label: &str) -> usize {
    (0..a.dim()).find(|&i| a.label(i) == label).unwrap_or_else(|| panic!("no basis element {label}"))
}

/// `X^m` spanned directly from products of basis vectors.
fn power(a: &Algebra<Gf>, x: &Subspace<Gf>, m: usize) -> Subspace<Gf> {
    let mut cur = x.clone();
    for _ in 1..m {
        let mut vs = Vec::new();
        for u in cur.vectors() {
            for v in x.vectors() {
                vs.push(a.mul(&u, &v));
            }
        }
        cur = Subspace::from_vectors(a.field(), a.dim(), vs);
    }
    cur
}

fn is_nilpotent(a: &Algebra<Gf>, x: &Subspace<Gf>) -> bool {
    power(a, x, a.dim() + 1).is_zero()
}

// ---------------------------------------------------------------- criteria

fn algebra_validity() -> Res {
    let all = catalog::build_all().map_err(|e| e.to_string())?;
    for (entry, alg) in &all {
        let ok = match alg {
            AnyAlgebra::Prime(a) => a.validate().is_valid(),
            AnyAlgebra::Rational(a) => a.validate().is_valid(),
        };
        ensure(ok, || format!("{} fails validation", entry.name))?;
    }
    let t2 = catalog::prime("t2_gf2");
    let f = t2.field();
    let n = t2.dim();
    let mut perturbed = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = f.add(t2.constant(i, j, k), &f.one());
                let bad = t2.with_constant(i, j, k, v);
                ensure(!bad.validate().is_valid(), || format!("perturbing c[{i}][{j}][{k}] went unnoticed"))?;
                perturbed += 1;
            }
        }
    }
    // The same through the command line: a perturbed spec is reported invalid.
    let mut spec = t2.to_spec();
    spec.structure_constants[0][0][0] = silting_core::Scalar::Int(0);
    let path = std::env::temp_dir().join(format!("acceptance-perturbed-{}.json", std::process::id()));
    std::fs::write(&path, spec.to_json()).map_err(|e| e.to_string())?;
    let out = silting_cli::run(["silting", "--format", "json", "--input", path.to_str().unwrap(), "validate"]);
    std::fs::remove_file(&path).ok();
    let report: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    ensure(out.code == 1 && report["analyses"][0]["result"]["valid"] == false, || {
        format!("cli validate on a perturbed spec: exit {} {}", out.code, out.stdout)
    })?;
    Ok(format!("{} catalog algebras valid, {perturbed}/{perturbed} perturbations flagged", all.len()))
}

fn radicals() -> Res {
    let expected = [("t2_gf2", 1), ("t3_gf2", 3), ("loop_x4_gf2", 3), ("m2_gf2", 0), ("gf3_cubed", 0)];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, dim) in expected {
        let a = catalog::prime(name);
        let j = silting_core::semiperfect::radical(&a, &mut rng).map_err(|e| e.to_string())?.space;
        ensure(j.dim() == dim, || format!("{name}: radical dim {} expected {dim}", j.dim()))?;
        ensure(is_nilpotent(&a, &j), || format!("{name}: radical not nilpotent"))?;
        // Oracle: the largest nilpotent two-sided subspace, by exhaustion.
        let nil: Vec<Subspace<Gf>> = enumerate_subspaces(a.field(), a.dim())
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|s| a.is_two_sided(s) && is_nilpotent(&a, s))
            .collect();
        let top = nil.iter().max_by_key(|s| s.dim()).expect("zero ideal is nilpotent");
        ensure(*top == j, || format!("{name}: radical differs from the brute-force maximal nilpotent ideal"))?;
        ensure(nil.iter().all(|s| j.contains(s).unwrap()), || format!("{name}: a nilpotent ideal escapes J"))?;
        let (q, _) = a.quotient_by(&j).map_err(|e| e.to_string())?;
        let qj = silting_core::semiperfect::radical(&q, &mut rng).map_err(|e| e.to_string())?.space;
        ensure(qj.is_zero(), || format!("{name}: rad(A/J) has dim {}", qj.dim()))?;
    }
    let t2 = catalog::prime("t2_gf2");
    let j = silting_core::semiperfect::radical(&t2, &mut rng).unwrap().space;
    let e21 = Subspace::from_vectors(t2.field(), 3, vec![t2.basis_vector(label_index(&t2, "E21"))]);
    ensure(j == e21, || "rad(T2) is not span{E21}".into())?;
    Ok("dims 1, 3, 3, 0, 0 match the exhaustive oracle; J nilpotent, rad(A/J) = 0".into())
}

fn ideal_enumeration() -> Res {
    let mut counts = Vec::new();
    for (name, want) in [("t2_gf2", 4), ("dual_numbers_gf2", 2)] {
        let a = catalog::prime(name);
        let sp = Semiperfect::new(&a, SEED).map_err(|e| e.to_string())?;
        let found: BTreeSet<String> =
            enumerate_idempotent_ideals(&sp).iter().map(|i| format!("{:?}", i.space().basis().to_scalars())).collect();
        let brute: BTreeSet<String> = idempotent_ideals_brute(&a)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|s| format!("{:?}", s.basis().to_scalars()))
            .collect();
        ensure(found == brute, || format!("{name}: enumeration {found:?} vs brute force {brute:?}"))?;
        ensure(found.len() == want, || format!("{name}: {} ideals, expected {want}", found.len()))?;
        counts.push(format!("{name}: {}", found.len()));
    }
    let d = catalog::prime("dual_numbers_gf2");
    let sp = Semiperfect::new(&d, SEED).unwrap();
    let dims: Vec<usize> = enumerate_idempotent_ideals(&sp).iter().map(|i| i.dim()).collect();
    ensure(dims == [0, 2], || format!("k[x]/(x^2) ideals have dims {dims:?}"))?;
    let j = &sp.radical().space;
    ensure(product_space(&d, j, j) != *j, || "J of k[x]/(x^2) reported idempotent".into())?;
    Ok(format!("{} (equal to brute force)", counts.join(", ")))
}

fn theorem_end_to_end() -> Res {
    let mut ideals = 0;
    let mut checks = 0;
    for (name, a) in prime_catalog() {
        let sp = Semiperfect::new(&a, SEED).map_err(|e| e.to_string())?;
        let modules = oracle2(&a);
        let mut samples = modules.clone();
        samples.push(ModuleRep::regular(&a));
        for ideal in enumerate_idempotent_ideals(&sp) {
            let w = trace_witness(&sp, &ideal).map_err(|e| e.to_string())?;
            let w = w.ok_or_else(|| format!("{name}: no trace witness for an ideal of dim {}", ideal.dim()))?;
            let can = canonical_presentation(&ideal, &w.module).map_err(|e| e.to_string())?;
            let rep = silting_verdict(&ideal, &can.rho, &samples).map_err(|e| format!("{name}: {e}"))?;
            ensure(rep.conditions.a && rep.conditions.b, || format!("{name}: (a) or (b) fails"))?;
            ensure(rep.c_holds(), || format!("{name}: I T_R is nonzero"))?;
            ensure(rep.silting == Some(true), || format!("{name}: verdict {:?}", rep.silting))?;
            for x in &modules {
                let member = d_sigma_membership(&can.rho.sigma, x).map_err(|e| e.to_string())?;
                ensure(member == x.ideal_times(ideal.space()).is_zero(), || {
                    format!("{name}: D_rho membership disagrees with I X = 0 on a dim {} module", x.dim())
                })?;
                checks += 1;
            }
            ideals += 1;
        }
    }

    // T2: the generator-based oracle agrees with filtering all 4096 tuples
    // of basis actions in dimension two.
    let t2 = catalog::prime("t2_gf2");
    let f = t2.field();
    let elems = f.elements().unwrap();
    let mut brute = BTreeSet::new();
    let mut candidates = 0u64;
    for code in 0u32..1 << 12 {
        let bits: Vec<_> = (0..12).map(|b| elems[(code >> b & 1) as usize]).collect();
        let actions: Vec<Matrix<Gf>> = bits
            .chunks(4)
            .map(|c| Matrix::from_rows(f, 2, vec![c[..2].to_vec(), c[2..].to_vec()]).unwrap())
            .collect();
        candidates += 1;
        if let Ok(m) = ModuleRep::new(t2.clone(), actions) {
            brute.insert(format!("{:?}", m.actions().iter().map(|x| x.to_scalars()).collect::<Vec<_>>()));
        }
    }
    let via_generators: BTreeSet<String> = silting_core::oracle::enumerate_modules_of_dim(&t2, 2)
        .unwrap()
        .modules
        .iter()
        .map(|m| format!("{:?}", m.actions().iter().map(|x| x.to_scalars()).collect::<Vec<_>>()))
        .collect();
    ensure(candidates == 4096 && brute == via_generators, || {
        format!("T2 dim 2: {} modules from 4096 tuples vs {} from generators", brute.len(), via_generators.len())
    })?;

    // For I = span{E21, E22} in T2: D_rho membership is Hom(A E22, X) = 0.
    let sp = Semiperfect::new(&t2, SEED).unwrap();
    let e22 = t2.basis_vector(label_index(&t2, "E22"));
    let p = ModuleRep::summand(&t2, &e22).unwrap();
    let ideal = enumerate_idempotent_ideals(&sp)
        .into_iter()
        .find(|i| i.dim() == 2 && i.space().contains_vector(&e22))
        .ok_or("no ideal span{E21, E22}")?;
    let w = trace_witness(&sp, &ideal).unwrap().unwrap();
    let can = canonical_presentation(&ideal, &w.module).unwrap();
    for x in oracle2(&t2) {
        let member = d_sigma_membership(&can.rho.sigma, &x).unwrap();
        ensure(member == (hom_dim(&p, &x).unwrap() == 0), || "D_rho differs from Hom(A E22, -) = 0".into())?;
    }
    Ok(format!(
        "{ideals} ideals silting; {checks} D_rho checks, 0 disagreements; T2 dim 2 oracle: {} modules from 4096 tuples",
        brute.len()
    ))
}

fn preenvelope_consistency() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    for (name, a) in prime_catalog() {
        let sp = Semiperfect::new(&a, SEED).map_err(|e| e.to_string())?;
        let mut samples = oracle2(&a);
        samples.push(ModuleRep::regular(&a));
        for ideal in enumerate_idempotent_ideals(&sp) {
            let w = trace_witness(&sp, &ideal).unwrap().unwrap();
            let can = canonical_presentation(&ideal, &w.module).unwrap();
            let rep = silting_verdict(&ideal, &can.rho, &samples).map_err(|e| e.to_string())?;
            let c3 = rep.c_holds();
            let c2 = no_torsion_free_in_d_sigma(&can.rho, &ideal, &samples).map_err(|e| e.to_string())?;
            let c1 = maps_factor_through_quotient(&can.rho, &ideal, &samples, 20, &mut rng).map_err(|e| e.to_string())?;
            ensure(c1 == c3 && c2 == c3, || format!("{name}: c' {c1}, c'' {c2}, c''' {c3}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (ideal, presentation) pairs, 0 disagreements"))
}

fn random_element(f: &Gf, n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..n).map(|_| f.random(rng)).collect()
}

/// A nonzero subquotient `W / U` of `R^2`, with `W` and `U` generated by
/// random vectors.
fn random_subquotient(a: &Arc<Algebra<Gf>>, rng: &mut ChaCha8Rng) -> ModuleRep<Gf> {
    let f = a.field();
    let free = ModuleRep::free(a, 2);
    loop {
        let gens: Vec<Vec<u32>> = (0..rng.gen_range(1..=2)).map(|_| random_element(f, free.dim(), rng)).collect();
        let (w, _) = free.submodule(&free.span_of(&gens)).unwrap();
        if w.dim() == 0 {
            continue;
        }
        let u = random_element(f, w.dim(), rng);
        let (m, _) = w.quotient(&w.span_of(&[u])).unwrap();
        if m.dim() > 0 {
            return m;
        }
    }
}

fn random_combination(maps: &[ModuleMap<Gf>], rows: usize, cols: usize, f: &Gf, rng: &mut ChaCha8Rng) -> Matrix<Gf> {
    let mut m = Matrix::zeros(f, rows, cols);
    for h in maps {
        m.add_scaled(&f.random(rng), h.matrix());
    }
    m
}

fn cover_decomposition() -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total = 0;
    for (name, a) in prime_catalog() {
        let f = a.field();
        let sp = Semiperfect::new(&a, SEED).map_err(|e| e.to_string())?;
        for trial in 0..20 {
            let m = random_subquotient(&a, &mut rng);
            let cover = sp.projective_cover(&m).map_err(|e| e.to_string())?;
            // Q' = cover (+) extra projective, mapped onto M and twisted by a
            // random automorphism.
            let reps = sp.class_representatives();
            let extra_e: Vec<Vec<u32>> = (0..rng.gen_range(1..=2))
                .map(|_| sp.idempotents()[reps[rng.gen_range(0..reps.len())]].clone())
                .collect();
            let extra = ModuleRep::projective(&a, &extra_e).unwrap();
            let mut es = cover.cover.projective_summands().unwrap().to_vec();
            es.extend(extra_e);
            let q2 = ModuleRep::projective(&a, &es).unwrap();
            let h = random_combination(&hom_space(&extra, &m).unwrap(), m.dim(), extra.dim(), f, &mut rng);
            let onto = Matrix::hstack(f, m.dim(), &[cover.map.matrix(), &h]);
            let auto = loop {
                let c = random_combination(&hom_space(&q2, &q2).unwrap(), q2.dim(), q2.dim(), f, &mut rng);
                if c.inverse().is_some() {
                    break c;
                }
            };
            let other = ModuleMap::new(q2.clone(), m.clone(), onto.mul(&auto)).map_err(|e| e.to_string())?;
            let dec = lemma21_decompose(&cover, &other).map_err(|e| format!("{name} trial {trial}: {e}"))?;
            let id = |x: &Matrix<Gf>| x.is_identity();
            let ok = id(&dec.iso.matrix().mul(dec.iso_inverse.matrix()))
                && id(&dec.iso_inverse.matrix().mul(dec.iso.matrix()))
                && id(&dec.kernel_iso.matrix().mul(dec.kernel_iso_inverse.matrix()))
                && id(&dec.kernel_iso_inverse.matrix().mul(dec.kernel_iso.matrix()))
                && dec.iso.intertwines()
                && dec.kernel_iso.intertwines()
                && dec.complement.dim() + cover.cover.dim() == q2.dim()
                && sp.is_projective(&dec.complement).unwrap()
                && dec.verify(&cover, &other);
            ensure(ok, || format!("{name} trial {trial}: witnesses do not re-verify"))?;
            total += 1;
        }
    }
    Ok(format!("{total} random epimorphisms decomposed, all witnesses re-verified"))
}

fn ext_and_d_sigma() -> Res {
    let d = catalog::prime("dual_numbers_gf2");
    let sp = Semiperfect::new(&d, SEED).unwrap();
    let k = &sp.simple_tops()[0];
    let e = ext1(k, k).map_err(|e| e.to_string())?.dim;
    ensure(e == 1, || format!("dim Ext^1(k, k) = {e}"))?;
    let mut ext_pairs = 0;
    let mut lemma_checks = 0;
    for (name, a) in prime_catalog() {
        let sp = Semiperfect::new(&a, SEED).unwrap();
        let modules = oracle2(&a);
        for r in sp.class_representatives() {
            let p = ModuleRep::summand(&a, &sp.idempotents()[r]).unwrap();
            for x in &modules {
                ensure(ext1(&p, x).unwrap().dim == 0, || format!("{name}: Ext^1(P{r}, X) is nonzero"))?;
                ext_pairs += 1;
            }
        }
        for ideal in enumerate_idempotent_ideals(&sp) {
            let w = trace_witness(&sp, &ideal).unwrap().unwrap();
            let can = canonical_presentation(&ideal, &w.module).unwrap();
            // The canonical sigma has P_-1 / I P_-1 = 0, so (a) and (b) hold trivially.
            let ab = check_conditions_ab(&can.sigma, &ideal).unwrap();
            ensure(ab.a && ab.b && ab.sigma_bar.source().dim() == 0, || format!("{name}: canonical sigma (a)/(b)"))?;
            for pres in [&can.sigma, &can.rho] {
                let (coker, _) = pres.cokernel().unwrap();
                for x in &modules {
                    let lhs = d_sigma_membership(&pres.sigma, x).unwrap();
                    let rhs = d_alpha_membership(&pres.pi, x).unwrap() && ext1(&coker, x).unwrap().dim == 0;
                    ensure(lhs == rhs, || format!("{name}: D_sigma identity fails"))?;
                    lemma_checks += 1;
                }
            }
        }
    }
    Ok(format!("Ext^1(k,k) = 1; {ext_pairs} projective Ext checks zero; {lemma_checks} D_sigma identity checks"))
}

fn recollement_checks() -> Res {
    let t2 = catalog::prime("t2_gf2");
    let mut summary = Vec::new();
    for label in ["E22", "E11"] {
        let e = t2.basis_vector(label_index(&t2, label));
        let text = serde_json::to_string(&e).unwrap();
        let out = silting_cli::run(["silting", "--catalog", "t2_gf2", "--format", "json", "--seed", "20", "recollement", "--e", &text]);
        let report: Value = serde_json::from_str(&out.stdout).map_err(|err| format!("{err}: {}", out.stderr))?;
        let r = &report["analyses"][0]["result"];
        ensure(out.code == 0 && r["ok"] == true, || format!("e = {label}: {r}"))?;
        ensure(r["adjunction_trials"] == 20, || "expected 20 adjunction trials".into())?;
        // Every oracle module is among the samples.
        let oracle = oracle2(&t2).len() as u64;
        ensure(r["samples"].as_u64().unwrap() >= oracle, || "oracle modules missing from samples".into())?;

        // C_I is killed by i^*.
        let rec = Recollement::new(&t2, &e).unwrap();
        for m in oracle2(&t2) {
            if m.ideal_times(rec.ideal().space()).is_full() {
                ensure(rec.i_upper_star(&m).unwrap().0.dim() == 0, || "i^* M is nonzero for M in C_I".into())?;
            }
        }
        summary.push(format!("e = {label}: {} samples", r["samples"]));
    }
    Ok(format!("{}; sequences exact, 20 adjunction/unit checks each", summary.join(", ")))
}

fn negative_instances() -> Res {
    let mut with_radical = 0;
    let mut witnessed = 0;
    for (name, a) in prime_catalog() {
        let sp = Semiperfect::new(&a, SEED).unwrap();
        let j = &sp.radical().space;
        // A nonzero nilpotent ideal is never idempotent, so R/J is silting
        // here exactly because J is not an idempotent ideal candidate.
        if !j.is_zero() {
            ensure(product_space(&a, j, j) != *j, || format!("{name}: J is idempotent"))?;
            with_radical += 1;
        }
        for s in idempotent_ideals_brute(&a).unwrap() {
            let ideal = silting_core::Ideal::new(&a, s).unwrap();
            ensure(trace_witness(&sp, &ideal).unwrap().is_some(), || format!("{name}: idempotent ideal without trace witness"))?;
            witnessed += 1;
        }
    }
    Ok(format!(
        "{with_radical} algebras with J != 0, none idempotent; all {witnessed} brute-force idempotent ideals are traces of projectives"
    ))
}

fn determinism() -> Res {
    let run_all = || -> Result<Vec<String>, String> {
        let mut outs = Vec::new();
        for name in catalog::names() {
            for cmd in [&["oracle", "--max-dim", "2"][..], &["silting", "--all"][..]] {
                let mut argv = vec!["silting", "--catalog", name, "--format", "json", "--seed", "7"];
                argv.extend_from_slice(cmd);
                let out = silting_cli::run(argv);
                let want = if name == "t2_q" { 1 } else { 0 };
                ensure(out.code == want, || format!("{name} {}: exit {} {}", cmd[0], out.code, out.stderr))?;
                outs.push(out.stdout);
            }
        }
        Ok(outs)
    };
    let first = run_all()?;
    let second = run_all()?;
    ensure(first == second, || "reports differ between runs".into())?;
    let bytes: usize = first.iter().map(|s| s.len()).sum();
    Ok(format!("{} reports, {bytes} bytes, byte-identical across two runs", first.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Res,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "algebra validity and mutation", limit: secs(1), run: algebra_validity },
        Criterion { id: 2, name: "radical", limit: secs(1), run: radicals },
        Criterion { id: 3, name: "idempotent ideals vs exhaustive oracle", limit: secs(10), run: ideal_enumeration },
        Criterion { id: 4, name: "R/I silting end to end", limit: secs(60), run: theorem_end_to_end },
        Criterion { id: 5, name: "preenvelope test vs sampled checks", limit: None, run: preenvelope_consistency },
        Criterion { id: 6, name: "projective cover decomposition", limit: None, run: cover_decomposition },
        Criterion { id: 7, name: "Ext and D_sigma structure", limit: None, run: ext_and_d_sigma },
        Criterion { id: 8, name: "recollement", limit: None, run: recollement_checks },
        Criterion { id: 9, name: "negative-instance honesty", limit: None, run: negative_instances },
        Criterion { id: 10, name: "determinism and performance", limit: secs(120), run: determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {}: {detail} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {why} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
