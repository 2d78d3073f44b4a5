use std::time::Instant;

use silting_core::catalog;
use silting_core::oracle::enumerate_modules;
use silting_core::silting::{canonical_presentation, silting_verdict};
use silting_core::ttf::{enumerate_idempotent_ideals, trace_witness};
use silting_core::{ModuleRep, Semiperfect};

#[test]
fn every_catalog_ideal_is_silting() {
    for entry in catalog::ENTRIES {
        let Some(a) = entry.build_prime().unwrap() else { continue };
        let start = Instant::now();
        let sp = Semiperfect::new(&a, 0).unwrap();
        let oracle = enumerate_modules(&a, 2).unwrap();
        let mut samples: Vec<ModuleRep<_>> = oracle.modules.clone();
        samples.push(ModuleRep::regular(&a));
        let ideals = enumerate_idempotent_ideals(&sp);
        for ideal in &ideals {
            let w = trace_witness(&sp, ideal).unwrap().expect("trace witness");
            let can = canonical_presentation(ideal, &w.module).unwrap();
            let rep = silting_verdict(ideal, &can.rho, &samples).unwrap();
            assert_eq!(rep.silting, Some(true), "{}", entry.name);
        }
        eprintln!(
            "{}: {} ideals, {} oracle modules, {:?}",
            entry.name,
            ideals.len(),
            oracle.modules.len(),
            start.elapsed()
        );
    }
}
