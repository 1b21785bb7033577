use std::path::PathBuf;
use std::process::ExitCode;

use quiverstack::verify::{run_criterion, CRITERIA};

fn selected() -> Vec<u8> {
    match std::env::var("ACCEPTANCE_ONLY") {
        Ok(list) => list.split(',').filter_map(|s| s.trim().parse().ok()).collect(),
        Err(_) => CRITERIA.iter().map(|c| c.0).collect(),
    }
}

fn main() -> ExitCode {
    let dump_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let mut failed = Vec::new();
    for id in selected() {
        let c = run_criterion(id).expect("criterion runs");
        println!("{}", c.line());
        if let Some(text) = &c.reproducer {
            let path = dump_dir.join(format!("criterion{id}-reproducer.txt"));
            std::fs::write(&path, text).expect("write reproducer");
            println!("  reproducer written to {}", path.display());
        }
        if !c.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
