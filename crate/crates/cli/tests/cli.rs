use serde_json::Value;
use silting_cli::{run, RunResult};
use silting_core::{catalog, Field, Matrix, PrimeField, Scalar};

fn cli(args: &[&str]) -> RunResult {
    run(std::iter::once("silting").chain(args.iter().copied()))
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--format", "json"];
    argv.extend_from_slice(args);
    let out = cli(&argv);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"));
    (out.code, v)
}

fn schema_check(report: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("silting-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn matrix(rows: &Value) -> Matrix<PrimeField> {
    let f = PrimeField::new(2).unwrap();
    let rows: Vec<Vec<u32>> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| f.from_scalar(&serde_json::from_value::<Scalar>(x.clone()).unwrap()).unwrap())
                .collect()
        })
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(&f, cols, rows).unwrap()
}

#[test]
fn silting_all_on_t2() {
    let (code, r) = json_report(&["--catalog", "t2_gf2", "silting", "--all"]);
    assert_eq!(code, 0);
    schema_check(&r);
    let res = &r["analyses"][0]["result"];
    assert_eq!(res["ideal_count"], 4);
    assert_eq!(res["silting_count"], 4);
    for entry in res["ideals"].as_array().unwrap() {
        let p = &entry["result"]["presentation"];
        // Re-multiply the retraction witness: r . sigma_bar = 1.
        let sigma_bar = matrix(&p["sigma_bar"]);
        if sigma_bar.cols() > 0 {
            let retraction = matrix(&p["retraction"]);
            assert!(retraction.mul(&sigma_bar).is_identity());
        }
    }
}

#[test]
fn radical_of_m2_is_zero() {
    let (code, r) = json_report(&["--catalog", "m2_gf2", "radical"]);
    assert_eq!(code, 0);
    assert_eq!(r["analyses"][0]["result"]["dim"], 0);
    assert_eq!(r["analyses"][0]["result"]["quotient_radical_dim"], 0);
}

#[test]
fn ideals_of_dual_numbers_gf5() {
    let (code, r) = json_report(&["--catalog", "dual_numbers_gf5", "ideals"]);
    assert_eq!(code, 0);
    schema_check(&r);
    let res = &r["analyses"][0]["result"];
    assert_eq!(res["count"], 2);
    let dims: Vec<u64> = res["ideals"].as_array().unwrap().iter().map(|i| i["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [0, 2]);
    assert_eq!(res["radical"]["idempotent"], false);
    assert_eq!(res["radical"]["square_dim"], 0);
}

#[test]
fn empty_analysis_list_is_a_valid_report() {
    let path = temp_file("empty.json", r#"{"field": {"prime": 2}, "quiver": "vertices: 1 2; arrows: a: 1 -> 2;"}"#);
    let (code, r) = json_report(&["--input", path.to_str().unwrap(), "run"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(r["analyses"], Value::Array(vec![]));
    schema_check(&r);
}

#[test]
fn document_analyses_run_in_order() {
    let t2 = catalog::prime("t2_gf2");
    let doc = format!(r#"{{"algebra": {}, "analyses": ["validate", "radical", "ideals"]}}"#, t2.to_spec().to_json());
    let path = temp_file("doc.json", &doc);
    let (code, r) = json_report(&["--input", path.to_str().unwrap(), "run"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    schema_check(&r);
    let names: Vec<&str> = r["analyses"].as_array().unwrap().iter().map(|a| a["analysis"].as_str().unwrap()).collect();
    assert_eq!(names, ["validate", "radical", "ideals"]);
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn same_input_and_seed_give_identical_json() {
    for args in [&["--catalog", "t3_gf2", "--seed", "5", "oracle"][..], &["--catalog", "a3_gf2", "silting", "--all"][..]] {
        let a = json_report(args);
        let b = json_report(args);
        assert_eq!(a.1.to_string(), b.1.to_string());
        assert_eq!(cli(args).stdout, cli(args).stdout);
    }
}

#[test]
fn binary_reads_the_seed_from_the_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_silting"))
        .args(["--catalog", "t2_gf2", "--format", "json", "info"])
        .env("SILTING_SEED", "42")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["seed"], 42);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_silting")).args(["--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rational_algebra_refuses_semiperfect_analyses() {
    let (code, r) = json_report(&["--catalog", "t2_q", "silting", "--all"]);
    assert_eq!(code, 1);
    schema_check(&r);
    assert_eq!(r["analyses"][0]["status"], "refused");
    assert_eq!(r["analyses"][0]["refusal"]["kind"], "unsupported_field");
    let (code, r) = json_report(&["--catalog", "t2_q", "radical"]);
    assert_eq!(code, 0);
    assert_eq!(r["analyses"][0]["result"]["dim"], 1);
}

#[test]
fn perturbed_spec_fails_validation_and_blocks_other_analyses() {
    let mut spec = catalog::prime("t2_gf2").to_spec();
    spec.structure_constants[2][2][2] = Scalar::Int(0);
    let path = temp_file("bad.json", &spec.to_json());
    let p = path.to_str().unwrap();
    let (code, r) = json_report(&["--input", p, "validate"]);
    assert_eq!(code, 1);
    assert_eq!(r["analyses"][0]["status"], "failed");
    assert_eq!(r["analyses"][0]["result"]["valid"], false);
    let out = cli(&["--input", p, "ideals"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("invalid algebra"), "{}", out.stderr);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(cli(&["--catalog", "t2_gf2", "--no-such-flag", "info"]).code, 2);
    assert_eq!(cli(&["--catalog", "no_such_algebra", "info"]).code, 2);
    assert_eq!(cli(&["info"]).code, 2);
    assert_eq!(cli(&["--catalog", "t2_gf2", "silting"]).code, 2);

    let path = temp_file("truncated.json", "{\"field\": {\"prime\": 2},\n \"dim\": 1, \"unit\": [1");
    let out = cli(&["--input", path.to_str().unwrap(), "info"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn quiver_diagnostics_are_positioned() {
    let path = temp_file("quiver.json", r#"{"field": {"prime": 2}, "quiver": "vertices: 1 2;\narrows: a: 1 -> 3;"}"#);
    let out = cli(&["--input", path.to_str().unwrap(), "info"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("quiver:2:"), "{}", out.stderr);
}

#[test]
fn ttf_and_trace_specs() {
    let (code, r) = json_report(&["--catalog", "t2_gf2", "ttf", "--ideal", "idempotents:1"]);
    assert_eq!(code, 0);
    let res = &r["analyses"][0]["result"];
    assert_eq!(res["ideal"]["dim"], 2);
    let regular = &res["modules"][0];
    assert_eq!(regular["module"], "R");
    assert_eq!(regular["in_t"], false);

    let (code, r) = json_report(&["--catalog", "t2_gf2", "ttf", "--ideal", "radical"]);
    assert_eq!(code, 1);
    assert_eq!(r["analyses"][0]["refusal"]["kind"], "not_idempotent");

    let (code, r) = json_report(&["--catalog", "t2_gf2", "trace", "--proj", "regular"]);
    assert_eq!(code, 0);
    assert_eq!(r["analyses"][0]["result"]["trace"]["dim"], 3);
    let (_, r) = json_report(&["--catalog", "t2_gf2", "trace", "--proj", "proj:0"]);
    assert_eq!(r["analyses"][0]["result"]["trace"]["idempotent"], true);
    assert_eq!(cli(&["--catalog", "t2_gf2", "trace", "--proj", "proj:9"]).code, 2);
}

#[test]
fn single_ideal_silting_with_generators() {
    let (code, r) = json_report(&["--catalog", "t3_gf2", "silting", "--ideal", "whole"]);
    assert_eq!(code, 0);
    assert_eq!(r["analyses"][0]["result"]["verdict"], "silting");
    let (code, r) = json_report(&["--catalog", "kronecker_gf2", "silting", "--ideal", "[[1, 0, 0, 0]]"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["analyses"][0]["result"]["witness_checks"]["retraction_composes_to_identity"], true);
}

#[test]
fn catalog_lists_every_entry() {
    let (code, r) = json_report(&["catalog"]);
    assert_eq!(code, 0);
    schema_check(&r);
    let n = r["analyses"][0]["result"]["entries"].as_array().unwrap().len();
    assert_eq!(n, catalog::ENTRIES.len());
    assert_eq!(r["input"], Value::Null);
}

#[test]
fn text_output_is_a_summary() {
    let out = cli(&["--catalog", "t2_gf2", "idempotents"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("== idempotents [ok]"));
    assert!(out.stdout.contains("sum_is_unit: true"));
}

#[test]
fn timings_are_opt_in() {
    let (_, r) = json_report(&["--catalog", "t2_gf2", "info"]);
    assert!(r.get("timings_ms").is_none());
    let (_, r) = json_report(&["--catalog", "t2_gf2", "--timings", "info"]);
    assert!(r["timings_ms"]["info"].is_number());
    schema_check(&r);
}
