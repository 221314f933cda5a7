mod common;

use common::{golden_dir, transcript, CASES};

/// Compares each case with its golden file; `UPDATE_GOLDEN=1` rewrites them.
#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let first = transcript(args);
        assert_eq!(first, transcript(args), "{name} is not deterministic");
        let path = golden_dir().join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &first).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != first {
            mismatches.push(format!(
                "{name}:\n--- expected\n{expected}--- actual\n{first}"
            ));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let code = |name: &str| {
        let (_, args) = CASES.iter().find(|(n, _)| *n == name).unwrap();
        let t = transcript(args);
        t.lines()
            .nth(1)
            .unwrap()
            .trim_start_matches("exit: ")
            .parse::<i32>()
            .unwrap()
    };
    for ok in [
        "eval_sum",
        "pi_50",
        "ramsey_5",
        "subbar_escape",
        "game_counter",
    ] {
        assert_eq!(code(ok), 0, "{ok}");
    }
    for invalid in [
        "eval_syntax",
        "ivt_bad_map",
        "euclid_not_prime",
        "ramsey_large",
        "unknown_flag",
    ] {
        assert_eq!(code(invalid), 2, "{invalid}");
    }
    for exhausted in ["eval_fuel", "hunt_99", "dickson_fuel"] {
        assert_eq!(code(exhausted), 3, "{exhausted}");
    }
}

#[test]
fn errors_carry_the_prefix() {
    for (name, args) in CASES {
        let t = transcript(args);
        let stderr = t.split("--- stderr\n").nth(1).unwrap();
        if !stderr.is_empty() {
            assert!(stderr.starts_with("error:"), "{name}: {stderr}");
        }
    }
}
