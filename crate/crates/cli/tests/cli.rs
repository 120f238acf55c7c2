use std::process::{Command, Output};

fn latpath_with(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_latpath"));
    cmd.args(args).env_remove("LATPATH_THREADS");
    if let Some(t) = threads {
        cmd.env("LATPATH_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

/// Runs a whitespace-separated command line.
fn latpath(line: &str) -> Output {
    let args: Vec<&str> = line.split_whitespace().collect();
    latpath_with(&args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn expect_ok(o: Output, what: &str) -> String {
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(o.status.code(), Some(0), "{what}: {err}");
    stdout(&o)
}

fn run_ok(line: &str) -> String {
    expect_ok(latpath(line), line)
}

fn exit_code(line: &str) -> Option<i32> {
    latpath(line).status.code()
}

#[test]
fn count_examples() {
    assert_eq!(
        run_ok("count --slope 1 --intercept 0 --from 0,0 --to 2,2 --weak"),
        "2\n"
    );
    assert_eq!(
        run_ok("count --slope 1/2 --intercept 1 --from 0,0 --to 2,1 --weak"),
        "3\n"
    );
    assert_eq!(
        exit_code("count --slope 2 --intercept 0 --from 1,0 --to 2,4 --weak"),
        Some(2)
    );
}

#[test]
fn count_with_oracle_reports_match() {
    let out = run_ok("count --slope 2 --intercept 3 --to 4,9 --oracle");
    let fields: Vec<&str> = out.split_whitespace().collect();
    assert_eq!(fields.len(), 3);
    assert_eq!(fields[0], fields[1]);
    assert_eq!(fields[2], "match");
}

#[test]
fn relaxed_queries_warn_but_succeed() {
    let o = latpath("count --intercept 1 --to 2,3 --strict");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn large_counts_print_every_digit() {
    let out = run_ok("count --to 100,100");
    assert_eq!(
        out.trim(),
        "896519947090131496687170070074100632420837521538745909320"
    );
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(exit_code("count --intercept 1/0 --to 1,1"), Some(2));
    assert_eq!(exit_code("count --slope 0 --to 1,1"), Some(2));
    assert_eq!(exit_code("count --to 1"), Some(2));
    assert_eq!(exit_code("count --to 1,1 --weak --strict"), Some(2));
}

#[test]
fn family_commands() {
    assert_eq!(
        run_ok("koroljuk --p 1 --c 1 --m 2 --n 1 --form both"),
        "3 3 agree\n"
    );
    assert_eq!(run_ok("bohm --rise 1 --start 2 --end 1 --ups 2"), "5\n");
    assert_eq!(run_ok("niederhausen --k 1 --d 1 --m 2 --n 2"), "2\n");
    assert_eq!(exit_code("bohm --rise 1 --start 0 --end 1 --ups 2"), Some(2));
    assert_eq!(exit_code("koroljuk --p 0 --c 1 --m 2 --n 1"), Some(2));
}

#[test]
fn enumerate_lists_paths_in_order() {
    let out = run_ok("enumerate --slope 1 --intercept 1 --from 0,0 --to 1,2 --strict");
    assert_eq!(out, "VHV\nVVH\n");
    assert_eq!(run_ok("enumerate --from 3,4 --to 3,4"), "");
    assert_eq!(exit_code("enumerate --to 13,13"), Some(2));

    let listed = run_ok("enumerate --slope 2 --to 3,7");
    let counted = run_ok("count --slope 2 --to 3,7");
    assert_eq!(listed.lines().count().to_string(), counted.trim());
}

#[test]
fn transform_examples() {
    let out = run_ok("transform --map koroljuk-to-unit --p 1 --c 2 --path UDU");
    assert_eq!(out, "VHV @ (0,0)\n");
    let out = run_ok("transform --map unit-to-koroljuk --p 1 --c 2 --path VHV");
    assert_eq!(out, "UDU @ (0,0)\n");
    assert_eq!(
        exit_code("transform --map koroljuk-to-unit --path UUD --c 2"),
        Some(2)
    );
    let out = run_ok("transform --map bohm-rotate --c 2 --path DUU");
    assert_eq!(out, "UDD @ (0,2)\n");
    let out = run_ok("transform --map lemma-translate --from 1,2 --path VH");
    assert_eq!(out, "VH @ (0,1)\n");
    assert_eq!(exit_code("transform --map bohm-rotate --path DUU"), Some(2));

    let empty = ["transform", "--map", "drop-one", "--from", "0,1", "--path", ""];
    assert_eq!(expect_ok(latpath_with(&empty, None), "empty path"), " @ (0,0)\n");
}

#[test]
fn json_documents_have_the_common_fields() {
    for line in [
        "--json count --to 3,3 --oracle",
        "koroljuk --p 2 --c 3 --m 4 --n 2 --json --form both",
        "--json transform --map koroljuk-to-unit --c 2 --path UDU",
        "--json verify sweep --max-k 1 --max-extent 3",
    ] {
        let doc: serde_json::Value = serde_json::from_str(&run_ok(line)).unwrap();
        for key in ["command", "parameters", "result", "ok"] {
            assert!(doc.get(key).is_some(), "{line} lacks {key}");
        }
        assert_eq!(doc["ok"], true);
    }
}

#[test]
fn out_file_repeats_stdout() {
    let dir = std::env::temp_dir().join(format!("latpath-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("count.txt");
    let printed = run_ok(&format!("count --to 5,5 --out {}", file.display()));
    assert_eq!(std::fs::read_to_string(&file).unwrap(), printed);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_subcommands() {
    assert!(run_ok("verify sweep --max-extent 0").contains("0 checks"));
    for line in [
        "verify sweep --max-k 2 --max-extent 5",
        "verify identities --trials 100 --seed 7",
        "verify bijections --max-steps 5",
    ] {
        let out = run_ok(line);
        assert!(out.contains(" 0 failures"), "{out}");
    }
}

#[test]
fn thread_override_keeps_results() {
    let args = ["verify", "sweep", "--max-k", "2", "--max-extent", "4"];
    let default = expect_ok(latpath_with(&args, None), "default pool");
    let single = expect_ok(latpath_with(&args, Some("1")), "one thread");
    assert_eq!(single, default);
    let four = expect_ok(latpath_with(&args, Some("4")), "four threads");
    assert_eq!(four, default);
    assert_eq!(latpath_with(&args, Some("many")).status.code(), Some(2));
}
