use std::path::Path;

use lch_core::dga::{augmentation_check, compose as compose_maps, linearized_differential, Dga, GradingViolation};
use lch_core::ingest::{self, serialize_morphism, serialize_morphism_with_paths};
use lch_core::scenario::sweep::{run_sweep, SweepConfig};

use crate::{load, Failure};

fn word_text(dga: &Dga, word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&x| dga.chord(x).name.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_violations(label: &str, source: &Dga, target: &Dga, v: &[GradingViolation]) {
    for g in v {
        println!(
            "{label}: {} -> {} has grading {}, expected {}",
            source.chord(g.chord).name,
            word_text(target, &g.word),
            g.found,
            g.expected
        );
    }
}

pub fn check(path: &Path, legacy: Option<u32>) -> Result<(), Failure> {
    let mut dga = load::dga(path)?.dga;
    if let Some(n) = legacy {
        dga = dga.legacy_rescaled(n);
    }
    let grading = dga.grading_validate();
    print_violations("grading", &dga, &dga, &grading);
    let d2 = dga.d_squared_report();
    for (a, e) in &d2 {
        println!("d2 {} = {}", dga.chord(*a).name, dga.format_element(e));
    }
    if grading.is_empty() && d2.is_empty() {
        println!("ok: {} chords, gradings valid, d2 = 0", dga.len());
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn morphism_check(path: &Path, source: Option<&Path>, target: Option<&Path>) -> Result<(), Failure> {
    let c = load::cobordism(path, source, target)?;
    let phi = &c.parsed.morphism;
    let grading = phi.grading_validate();
    print_violations("grading", phi.source(), phi.target(), &grading);
    let verdict = phi.check_chain_map();
    for (a, e) in &verdict.offending {
        println!(
            "chain map fails on {}: phi(d {0}) - d phi({0}) = {}",
            phi.source().chord(*a).name,
            phi.target().format_element(e)
        );
    }
    if grading.is_empty() && verdict.holds() {
        println!(
            "ok: chain map of degree 0 from {} to {}",
            c.source.label, c.target.label
        );
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn compose(first: &Path, second: &Path, with_paths: bool) -> Result<(), Failure> {
    let f = load::cobordism(first, None, None)?;
    let g = load::cobordism(second, None, None)?;
    if *f.target.dga != *g.source.dga {
        return Err(Failure::Input(format!(
            "middle DGAs differ: target of {} is {} but source of {} is {}",
            first.display(),
            f.target.label,
            second.display(),
            g.source.label
        )));
    }
    let both = compose_maps(&g.parsed.morphism, &f.parsed.morphism).map_err(|e| Failure::Input(e.to_string()))?;
    let text = if with_paths {
        serialize_morphism_with_paths(&both, f.source.written.as_deref(), g.target.written.as_deref())
    } else {
        serialize_morphism(&both)
    };
    print!("{text}");
    Ok(())
}

pub fn verify_signs(cfg: SweepConfig, summary: bool) -> Result<(), Failure> {
    let report = run_sweep(&cfg).map_err(|e| Failure::Input(e.to_string()))?;
    if summary {
        print!("{}", report.render_summary());
    } else {
        print!("{}", report.render_text());
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn linearize(dga_path: &Path, aug_path: &Path) -> Result<(), Failure> {
    let dga = load::dga(dga_path)?.dga;
    let text = load::read(aug_path)?;
    let aug =
        ingest::parse_augmentation(&text, &dga).map_err(|e| Failure::Input(format!("{}: {e}", aug_path.display())))?;
    let verdict = augmentation_check(&dga, &aug);
    if !verdict.holds() {
        for (a, v) in &verdict.failures {
            println!("augmentation fails on {}: aug(d {0}) = {v}", dga.chord(*a).name);
        }
        return Err(Failure::Check);
    }
    let lin = linearized_differential(&dga, &aug).map_err(|e| Failure::Input(e.to_string()))?;
    let names = |ids: &[usize]| {
        ids.iter()
            .map(|&x| dga.chord(x).name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for g in &lin.gradings {
        println!(
            "grading {}: rank {}, homology rank {}",
            g.grading, g.rank, g.homology_rank
        );
        if g.chords.is_empty() || g.targets.is_empty() {
            continue;
        }
        println!("  columns: {}", names(&g.chords));
        println!("  rows: {}", names(&g.targets));
        for r in 0..g.matrix.rows() {
            let row: Vec<String> = (0..g.matrix.cols()).map(|c| g.matrix.get(r, c).to_string()).collect();
            println!("  [{}]", row.join(" "));
        }
    }
    let total: usize = lin.gradings.iter().map(|g| g.homology_rank).sum();
    println!("total homology rank {total}");
    Ok(())
}
