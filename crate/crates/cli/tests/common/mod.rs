#![allow(dead_code)]

//! Golden runs of the CLI against the shipped demo files.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "check_series_admissible",
        args: &["check", "series_admissible.json"],
        exit: 0,
    },
    Case {
        name: "check_series_inadmissible",
        args: &["check", "series_inadmissible.json"],
        exit: 2,
    },
    Case {
        name: "check_malformed",
        args: &["check", "malformed.json"],
        exit: 1,
    },
    Case {
        name: "check_filter",
        args: &["check", "filter.json"],
        exit: 0,
    },
    Case {
        name: "check_convolution",
        args: &["check", "convolution.json"],
        exit: 0,
    },
    Case {
        name: "check_integral",
        args: &["check", "integral.json"],
        exit: 0,
    },
    Case {
        name: "check_integral_growing",
        args: &["check", "integral_growing.json"],
        exit: 2,
    },
    Case {
        name: "check_matrix",
        args: &["check", "matrix.json"],
        exit: 0,
    },
    Case {
        name: "invert_matrix",
        args: &["invert", "matrix.json"],
        exit: 0,
    },
    Case {
        name: "invert_matrix_zero",
        args: &["invert", "matrix.json", "--input", "zero4.csv"],
        exit: 0,
    },
    Case {
        name: "invert_filter",
        args: &["invert", "filter.json"],
        exit: 0,
    },
    Case {
        name: "invert_integral",
        args: &["invert", "integral.json"],
        exit: 0,
    },
    Case {
        name: "invert_convolution",
        args: &["invert", "convolution.json"],
        exit: 0,
    },
    Case {
        name: "invert_inadmissible",
        args: &["invert", "series_inadmissible.json", "--input", "zero4.csv"],
        exit: 2,
    },
    Case {
        name: "sweep_demo",
        args: &["sweep", "sweep.json"],
        exit: 0,
    },
    Case {
        name: "sweep_single",
        args: &["sweep", "sweep_single.json"],
        exit: 0,
    },
    Case {
        name: "sweep_singular",
        args: &["sweep", "sweep_singular.json"],
        exit: 2,
    },
    Case {
        name: "counterexample_triangle",
        args: &[
            "counterexample",
            "--pole",
            "1,0",
            "--pole",
            "0,1",
            "--pole",
            "-1,-1",
            "--lambda",
            "0,0",
        ],
        exit: 0,
    },
    Case {
        name: "counterexample_segment",
        args: &["counterexample", "--pole", "-1", "--pole", "1", "--lambda", "0"],
        exit: 0,
    },
    Case {
        name: "counterexample_at_pole",
        args: &["counterexample", "--pole", "-1", "--pole", "1", "--lambda", "1"],
        exit: 2,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn demos() -> PathBuf {
    crate_dir().join("demos")
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(format!("{name}.out"))
}

/// Runs the binary from the demo directory; returns stdout and exit code.
pub fn run(args: &[&str]) -> (Vec<u8>, i32) {
    run_in(&demos(), args)
}

pub fn run_in(dir: &Path, args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_resolvent-inv"))
        .args(args)
        .current_dir(dir)
        .env_remove("RESOLVENT_INV_LOG")
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

/// Compares one case against its golden file; `BLESS=1` rewrites goldens.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (stdout, code) = run(case.args);
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}", case.name, case.exit));
    }
    let path = golden_path(case.name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != stdout {
        return Err(format!("{}: stdout differs from {}", case.name, path.display()));
    }
    let (again, _) = run(case.args);
    if again != stdout {
        return Err(format!("{}: output not deterministic", case.name));
    }
    Ok(())
}

/// `re,im` CSV rows after the header.
pub fn parse_csv(bytes: &[u8]) -> Vec<(f64, f64)> {
    String::from_utf8_lossy(bytes)
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|f| f.trim().parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}
