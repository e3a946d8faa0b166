#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub const BIN: &str = env!("CARGO_BIN_EXE_cotoeplitz");

/// Recorded invocations: golden file name and arguments.
pub const CASES: &[(&str, &[&str])] = &[
    ("list-text", &["list"]),
    ("list-json", &["list", "--format", "json"]),
    ("comul-divpow-x2", &["comul", "--coalgebra", "divpow", "--element", "x_2"]),
    ("comul-divpow-sum-json", &["comul", "--coalgebra", "divpow", "--element", "x_1 + 2i*x_3", "--format", "json"]),
    ("comul-manin-a1c1", &["comul", "--coalgebra", "manin?q=2/3", "--element", "a^1 c^1"]),
    ("comul-negdeg-m1-x1", &["comul", "--coalgebra", "negdeg?M=1", "--element", "x_1"]),
    ("comul-negdeg-m1-x0-json", &["comul", "--coalgebra", "negdeg?M=1", "--element", "x_0", "--format", "json"]),
    ("comul-matrix-n2-csv", &["comul", "--coalgebra", "matrix?n=2", "--element", "E_1_2", "--format", "csv"]),
    ("apply-divpow-factorial", &["apply", "--coalgebra", "divpow", "--form", "diag?w=factorial", "--symbol", "x_2", "--element", "x_5"]),
    ("apply-divpow-k-gt-n", &["apply", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "x_4", "--element", "x_1"]),
    ("apply-divpow-negative-symbol", &["apply", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "-x_1", "--element", "x_2 - 1/2*x_3"]),
    ("apply-divpow-projection", &["apply", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "x_1", "--element", "x_3", "--projection", "x_2, x_3"]),
    ("apply-manin-orth-zero", &["apply", "--coalgebra", "manin?q=2/3", "--form", "manin-orth?w=one", "--symbol", "a^1 c^1", "--element", "a^2 c^0"]),
    ("apply-manin-skew", &["apply", "--coalgebra", "manin?q=2/3", "--form", "manin-skew?mu=poly:1", "--symbol", "a^3 c^1", "--element", "a^1 c^1"]),
    ("apply-negdeg-geom-json", &["apply", "--coalgebra", "negdeg?M=3", "--form", "diag?w=geom:1/3", "--symbol", "(1+i)*x_-2", "--element", "x_1", "--format", "json"]),
    ("apply-matrix-orth", &["apply", "--coalgebra", "matrix?n=3", "--form", "matrix-orth", "--symbol", "E_1_2", "--element", "E_3_2"]),
    ("apply-matrix-weighted", &["apply", "--coalgebra", "matrix?n=3", "--form", "matrix-weighted?w=geom:2", "--symbol", "E_3_1", "--element", "E_2_1"]),
    ("apply-matrix-weighted-csv", &["apply", "--coalgebra", "matrix?n=3", "--form", "matrix-weighted?w=one", "--symbol", "i*E_1_1 + E_2_1", "--element", "E_1_1 + E_3_2", "--format", "csv"]),
    ("matrix-divpow-shift", &["matrix", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "x_1", "--window", "deg<=3"]),
    ("matrix-negdeg-json", &["matrix", "--coalgebra", "negdeg?M=1", "--form", "diag?w=one", "--symbol", "x_-1", "--window", "full", "--format", "json"]),
    ("matrix-negdeg-leak", &["matrix", "--coalgebra", "negdeg?M=3", "--form", "diag?w=one", "--symbol", "x_-1", "--window", "deg<=1"]),
    ("matrix-negdeg-leak-csv", &["matrix", "--coalgebra", "negdeg?M=3", "--form", "diag?w=one", "--symbol", "x_-1", "--window", "deg<=1", "--format", "csv"]),
    ("matrix-manin-skew-csv", &["matrix", "--coalgebra", "manin?q=2/3", "--form", "manin-skew?mu=one", "--symbol", "a^2 c^1", "--window", "deg<=2", "--format", "csv"]),
    ("matrix-matrix-orth", &["matrix", "--coalgebra", "matrix?n=2", "--form", "matrix-orth", "--symbol", "E_1_2", "--window", "full"]),
    ("classify-negdeg-creation", &["classify", "--coalgebra", "negdeg?M=5", "--form", "diag?w=one", "--symbol", "x_-2", "--window", "full"]),
    ("classify-divpow-json", &["classify", "--coalgebra", "divpow", "--form", "diag?w=factorial", "--symbol", "x_3", "--window", "deg<=6", "--format", "json"]),
    ("classify-divpow-inhomogeneous", &["classify", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "x_1 + x_2", "--window", "deg<=4"]),
    ("classify-matrix-preservation", &["classify", "--coalgebra", "matrix?n=3", "--form", "matrix-weighted?w=one", "--symbol", "E_2_2", "--window", "full"]),
    ("classify-matrix-creation-csv", &["classify", "--coalgebra", "matrix?n=3", "--form", "matrix-weighted?w=one", "--symbol", "E_3_1", "--window", "full", "--format", "csv"]),
    ("classify-manin-zero", &["classify", "--coalgebra", "manin?q=2/3", "--form", "manin-orth?w=one", "--symbol", "a^0 c^1", "--window", "deg<=3"]),
    ("gram-divpow-factorial", &["gram", "--coalgebra", "divpow", "--form", "diag?w=factorial", "--window", "deg<=2"]),
    ("gram-manin-skew", &["gram", "--coalgebra", "manin?q=2/3", "--form", "manin-skew?mu=one", "--window", "deg<=2"]),
    ("gram-manin-orth-json", &["gram", "--coalgebra", "manin?q=2/3", "--form", "manin-orth?w=poly:1", "--window", "deg<=1", "--format", "json"]),
    ("gram-matrix-orth", &["gram", "--coalgebra", "matrix?n=2", "--form", "matrix-orth", "--window", "full"]),
    ("gram-matrix-weighted", &["gram", "--coalgebra", "matrix?n=2", "--form", "matrix-weighted?w=geom:2", "--window", "full"]),
    ("gram-negdeg-csv", &["gram", "--coalgebra", "negdeg?M=2", "--form", "diag?w=absfactorial", "--window", "full", "--format", "csv"]),
    ("error-syntax", &["apply", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "x_1", "--element", "x_5 +"]),
    ("error-wrong-coalgebra", &["comul", "--coalgebra", "manin?q=2/3", "--element", "x_2"]),
    ("error-key-out-of-range", &["comul", "--coalgebra", "negdeg?M=3", "--element", "x_7"]),
    ("error-form-mismatch", &["gram", "--coalgebra", "divpow", "--form", "matrix-orth", "--window", "deg<=2"]),
    ("error-weight-domain", &["gram", "--coalgebra", "negdeg?M=2", "--form", "diag?w=factorial", "--window", "full"]),
    ("error-not-in-subcoalgebra", &["apply", "--coalgebra", "divpow", "--form", "diag?w=one", "--symbol", "x_1", "--element", "x_1", "--projection", "x_2, x_3"]),
    ("error-unknown-spec", &["comul", "--coalgebra", "bialgebra", "--element", "x_1"]),
    ("error-invalid-parameter", &["comul", "--coalgebra", "manin?q=0", "--element", "a^0 c^0"]),
    ("usage-window-full-divpow", &["gram", "--coalgebra", "divpow", "--form", "diag?w=one", "--window", "full"]),
    ("usage-bad-window", &["gram", "--coalgebra", "divpow", "--form", "diag?w=one", "--window", "deg<3"]),
    ("verify-negdeg", &["verify", "--scope", "negdeg"]),
    ("verify-matrix-json", &["verify", "--scope", "matrix", "--format", "json"]),
];

/// Exit code, stdout and stderr of one invocation, as one text blob.
pub fn record(args: &[&str]) -> String {
    let out = Command::new(BIN).args(args).env("NO_COLOR", "1").output().expect("binary runs");
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

/// Names of cases whose output differs from the frozen file or between two runs.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for (name, args) in CASES {
        let first = record(args);
        let second = record(args);
        let frozen = std::fs::read_to_string(golden_path(name)).unwrap_or_default();
        if first != second || first != frozen {
            bad.push(name.to_string());
        }
    }
    bad
}
