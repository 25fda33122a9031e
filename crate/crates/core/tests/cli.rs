//! The `hashvault` binary: outputs, exit codes and reproducibility.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use hashvault::attack::rainbow_attack;
use hashvault::rainbow::RainbowTable;
use hashvault::vault::BreachDump;

fn hv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hashvault"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_lines(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("time."))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn hash_reproduces_the_salted_listing() {
    let o = hv(&["hash", "--scheme", "sha1", "--salt", "3031", "123456"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5a44cf4f2b0f2bfc7da6f386481f6afbc8aff73f\n");
}

#[test]
fn password_sources_agree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pw");
    std::fs::write(&file, "123456\n").unwrap();
    let from_file = hv(&["hash", "--scheme", "sha1", "--password-file", path(&file)]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_hashvault"))
        .args(["hash", "--scheme", "sha1", "--password-stdin"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"123456").unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    let expected = "7c4a8d09ca3762af61e59520943dc26494f8941b\n";
    assert_eq!(stdout(&from_file), expected);
    assert_eq!(stdout(&from_stdin), expected);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hv(&["hash", "--bogus-flag", "x"]).status.code(), Some(2));
    assert_eq!(hv(&["hash", "--scheme", "sha1"]).status.code(), Some(2));
    assert_eq!(
        hv(&["hash", "--scheme", "sha1", "--salt", "zz", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hv(&["hash", "--scheme", "bcrypt", "--cost", "40", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hv(&["experiment", "nope"]).status.code(), Some(2));
}

#[test]
fn enroll_verify_migrate_dump() {
    let dir = tempfile::tempdir().unwrap();
    let vault = dir.path().join("vault.txt");
    let v = path(&vault);
    let enroll = hv(&[
        "--seed", "1", "enroll", "--vault", v, "--user", "alice", "--scheme", "sha1", "123456",
    ]);
    assert_eq!(enroll.status.code(), Some(0), "{enroll:?}");
    assert_eq!(
        hv(&["verify", "--vault", v, "--user", "alice", "123456"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        hv(&["verify", "--vault", v, "--user", "alice", "654321"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hv(&["verify", "--vault", v, "--user", "nobody", "123456"])
            .status
            .code(),
        Some(1)
    );
    let dup = hv(&[
        "enroll", "--vault", v, "--user", "alice", "--scheme", "sha1", "x",
    ]);
    assert_eq!(dup.status.code(), Some(1));

    let migrate = hv(&[
        "migrate", "--vault", v, "--user", "alice", "--scheme", "bcrypt", "--cost", "4", "123456",
    ]);
    assert_eq!(migrate.status.code(), Some(0));
    assert!(stdout(&migrate).contains("scheme=bcrypt$cost=4"));
    assert_eq!(
        hv(&["verify", "--vault", v, "--user", "alice", "123456"])
            .status
            .code(),
        Some(0)
    );
    let bad = hv(&[
        "migrate", "--vault", v, "--user", "alice", "--scheme", "sha1", "nope",
    ]);
    assert_eq!(bad.status.code(), Some(1));

    let dump = hv(&["dump", "--vault", v]);
    assert_eq!(dump.status.code(), Some(0));
    let text = stdout(&dump);
    assert!(text.contains("alice:bcrypt$cost=4$"));
    assert!(!text.contains("123456"));
}

#[test]
fn seeded_runs_are_byte_identical_across_job_counts() {
    let run = |jobs: &str| {
        let dir = tempfile::tempdir().unwrap();
        let vault = dir.path().join("v.txt");
        let v = path(&vault);
        for (user, pw) in [
            ("a", "123456"),
            ("b", "password"),
            ("c", "123456"),
            ("d", "zq9!x"),
        ] {
            let o = hv(&[
                "--seed",
                "5",
                "--jobs",
                jobs,
                "enroll",
                "--vault",
                v,
                "--user",
                user,
                "--scheme",
                "sha1-salted",
                pw,
            ]);
            assert_eq!(o.status.code(), Some(0));
        }
        let dump_path = dir.path().join("d.txt");
        hv(&["dump", "--vault", v, "--out", path(&dump_path)]);
        let crack = hv(&[
            "--seed",
            "0",
            "--jobs",
            jobs,
            "crack",
            "--dump",
            path(&dump_path),
            "--zipf-top",
            "20",
        ]);
        assert_eq!(crack.status.code(), Some(0));
        let created_at_free: String = std::fs::read_to_string(&dump_path)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(':').map_or(l, |(head, _)| head).to_string())
            .collect::<Vec<_>>()
            .join("\n");
        (created_at_free, data_lines(&stdout(&crack)))
    };
    let one = run("1");
    assert_eq!(one, run("2"));
    assert!(one.1.contains("cracked=3"), "{}", one.1);
    assert!(one.1.contains("crack=a:123456"));
}

#[test]
fn table_build_then_crack_matches_library_report() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.rbt");
    let build = hv(&[
        "--seed",
        "3",
        "table-build",
        "--out",
        path(&table),
        "--length",
        "4",
        "--chain-length",
        "50",
        "--chains",
        "300",
    ]);
    assert_eq!(build.status.code(), Some(0));
    assert!(stdout(&build).contains("chains=300"));

    let vault = dir.path().join("v.txt");
    for i in 0..40 {
        let pin = format!("{:04}", i * 241 % 10_000);
        let o = hv(&[
            "--seed",
            "3",
            "enroll",
            "--vault",
            path(&vault),
            "--user",
            &format!("u{i}"),
            "--scheme",
            "sha1",
            &pin,
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let dump = dir.path().join("d.txt");
    hv(&["dump", "--vault", path(&vault), "--out", path(&dump)]);
    let csv = dir.path().join("r.csv");
    let crack = hv(&[
        "crack",
        "--dump",
        path(&dump),
        "--table",
        path(&table),
        "--csv",
        path(&csv),
    ]);
    assert_eq!(crack.status.code(), Some(0));

    let expected = rainbow_attack(
        &BreachDump::load(&dump).unwrap(),
        &RainbowTable::load(&table).unwrap(),
    )
    .unwrap();
    let out = stdout(&crack);
    assert!(
        out.contains(&format!("\ncracked={}\n", expected.cracked_count())),
        "{out}"
    );
    let csv = std::fs::read_to_string(&csv).unwrap();
    assert!(csv.starts_with("attack,scheme,records,"));

    // a salted dump is refused by an unsalted table
    let salted = dir.path().join("s.txt");
    hv(&[
        "enroll",
        "--vault",
        path(&salted),
        "--user",
        "x",
        "--scheme",
        "sha1-salted",
        "1234",
    ]);
    let sdump = dir.path().join("sd.txt");
    hv(&["dump", "--vault", path(&salted), "--out", path(&sdump)]);
    let refused = hv(&["crack", "--dump", path(&sdump), "--table", path(&table)]);
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn bench_honours_the_duration_variable() {
    let o = Command::new(env!("CARGO_BIN_EXE_hashvault"))
        .args(["bench", "--scheme", "sha1"])
        .env("HASHVAULT_BENCH_SECONDS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("scheme=sha1\nruns=3\n"), "{out}");
    assert!(out.contains("time.rate.median="));
    let short = Command::new(env!("CARGO_BIN_EXE_hashvault"))
        .args(["bench", "--scheme", "sha1"])
        .env("HASHVAULT_BENCH_SECONDS", "0.2")
        .output()
        .unwrap();
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn quick_experiments_run_from_the_cli() {
    for name in ["golden", "pipeline"] {
        let o = hv(&["experiment", name]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).ends_with("passed=true\n"));
    }
}
