use std::path::PathBuf;
use std::process::Command;

/// One invocation per subcommand variant; every subcommand appears.
pub const CASES: &[(&str, &[&str])] = &[
    (
        "eval_sum",
        &["eval", "1/3 + 1/6", "-p", "10", "--fuel", "64"],
    ),
    (
        "eval_rho2",
        &["eval", "rho2(9,99)", "-p", "4", "--fuel", "8"],
    ),
    (
        "eval_sqrt2_json",
        &["eval", "abs(1 - sqrt2) * 2", "-p", "16", "--format", "json"],
    ),
    ("eval_fuel", &["eval", "sqrt2", "-p", "30", "--fuel", "8"]),
    ("eval_syntax", &["eval", "1/0 + 2"]),
    ("pi_50", &["pi", "--digits", "50"]),
    (
        "hunt_found",
        &["hunt", "--digit", "1", "--run", "2", "--budget", "200"],
    ),
    (
        "hunt_99",
        &[
            "hunt", "--digit", "9", "--run", "99", "--budget", "500", "--format", "json",
        ],
    ),
    ("encode", &["encode", "1", "2", "3"]),
    ("encode_empty", &["encode"]),
    ("decode", &["decode", "11249"]),
    ("decode_json", &["decode", "11249", "--format", "json"]),
    (
        "ivt_f0",
        &["ivt", "--map", "f0:7,1", "--y", "1/2", "-p", "8"],
    ),
    (
        "ivt_id",
        &["ivt", "--map", "id", "--y", "sqrt2 - 1", "-p", "12"],
    ),
    (
        "ivt_lnc",
        &[
            "ivt", "--map", "id", "--y", "1/4", "-p", "12", "--mode", "lnc",
        ],
    ),
    (
        "ivt_countable",
        &[
            "ivt",
            "--map",
            "id",
            "--y",
            "sqrt2 - 1",
            "-p",
            "12",
            "--mode",
            "countable",
        ],
    ),
    (
        "ivt_f2_json",
        &[
            "ivt",
            "--map",
            "f2:7,1,1,2",
            "--y",
            "1/2",
            "-p",
            "6",
            "--format",
            "json",
        ],
    ),
    ("ivt_bad_map", &["ivt", "--map", "f3:1,1", "--y", "0"]),
    (
        "subbar_len3",
        &["subbar", "--spec", "len=3", "--depth", "4"],
    ),
    (
        "subbar_escape",
        &["subbar", "--spec", "has1@0 | has1@1", "--depth", "4"],
    ),
    (
        "subbar_sum",
        &[
            "subbar",
            "--spec",
            "sum>=2 | len=3",
            "--depth",
            "5",
            "--format",
            "json",
        ],
    ),
    ("game_pi", &["game", "--c", "pi(7,1)", "--bound", "20"]),
    (
        "game_counter",
        &["game", "--c", "i=0 | n%3=0 & n>=4", "--bound", "4"],
    ),
    (
        "game_2omega",
        &[
            "game",
            "--mode",
            "2omega",
            "--c",
            "i=1 & n=3",
            "--strategy",
            "2",
            "3",
        ],
    ),
    ("euclid", &["euclid", "2", "3", "5", "7", "11", "13"]),
    ("euclid_not_prime", &["euclid", "2", "4"]),
    (
        "dickson",
        &["dickson", "--seqs", "3,2,1,0;0,1,2", "--fuel", "32"],
    ),
    (
        "dickson_fuel",
        &[
            "dickson",
            "--seqs",
            "9,8,7,6,5,4,3,2,1,0;0,1,2,3,4,5,6,7,8,9",
            "--fuel",
            "6",
        ],
    ),
    (
        "ramsey_6",
        &["ramsey", "--M", "6", "--n", "3", "--k", "2", "--r", "2"],
    ),
    (
        "ramsey_5",
        &[
            "ramsey", "--M", "5", "--n", "3", "--k", "2", "--r", "2", "--format", "json",
        ],
    ),
    (
        "ramsey_star",
        &[
            "ramsey", "--M", "5", "--n", "2", "--k", "1", "--r", "2", "--star",
        ],
    ),
    (
        "ramsey_large",
        &["ramsey", "--M", "12", "--n", "3", "--k", "2", "--r", "2"],
    ),
    ("unknown_flag", &["pi", "--digitz", "3"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Transcript of one run: arguments, exit code, stdout, stderr.
pub fn transcript(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_intuit"))
        .args(args)
        .output()
        .expect("binary runs");
    format!(
        "args: {args:?}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    )
}
