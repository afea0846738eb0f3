use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_worstchar")).args(args).output().expect("spawn worstchar")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, data: &[u8]) -> String {
    let path = dir.path().join(name);
    fs::write(&path, data).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn gen_writes_text_and_metadata() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("text.bin");
    let out_s = out.to_str().unwrap();
    stdout(&run(&["gen", "--dist", "powerlaw", "--sigma", "4", "--lambda", "5", "--n", "5000", "--seed", "9", "--out", out_s]));
    let text = fs::read(&out).unwrap();
    assert_eq!(text.len(), 5000);
    assert!(text.iter().all(|&b| b < 4));
    let meta = fs::read_to_string(Path::new(&format!("{out_s}.meta"))).unwrap();
    assert!(meta.starts_with("dist=powerlaw sigma=4 lambda=5 n=5000 seed=9 generator="), "{meta}");

    // Same seed, same bytes.
    let again = dir.path().join("again.bin");
    stdout(&run(&["gen", "--dist", "powerlaw", "--sigma", "4", "--n", "5000", "--seed", "9", "--out", again.to_str().unwrap()]));
    assert_eq!(fs::read(&again).unwrap(), text);
}

#[test]
fn search_prints_occurrences_then_stats() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t", b"abracadabra");
    let p = write(&dir, "p", b"abra");
    for algo in ["naive", "hor", "qs", "sm", "wc"] {
        let out = stdout(&run(&["search", "--algo", algo, "--pattern-file", &p, "--text-file", &t]));
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(&lines[..2], ["0", "7"], "{algo}");
        assert_eq!(lines.len(), 3, "{algo}");
        assert!(lines[2].starts_with("shifts=") && lines[2].contains(" advanced=") && lines[2].contains(" cmps="));
    }
    let out = stdout(&run(&["search", "--algo", "naive", "--pattern-file", &p, "--text-file", &t]));
    assert!(out.ends_with("shifts=8 advanced=8 cmps=16\n"), "{out}");
}

#[test]
fn search_with_remap_and_frequency_file() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t", b"the cat sat on the mat");
    let p = write(&dir, "p", b"at");
    let out = stdout(&run(&["search", "--algo", "qs", "--mapping", "remap", "--pattern-file", &p, "--text-file", &t]));
    assert_eq!(out.lines().take(3).collect::<Vec<_>>(), ["5", "9", "20"]);

    let bits = write(&dir, "bits", &[0, 1, 1, 0, 1, 0, 0, 1, 1, 0]);
    let pat = write(&dir, "pat", &[1, 0]);
    let freq = write(&dir, "f.csv", b"# skewed\n0,0.9\n1,0.1\n");
    let out = run(&["search", "--algo", "wc", "--sigma", "2", "--freq-file", &freq, "--pattern-file", &pat, "--text-file", &bits, "--explain"]);
    assert_eq!(stdout(&out).lines().take(3).collect::<Vec<_>>(), ["2", "4", "8"]);
    let profile = String::from_utf8(out.stderr).unwrap();
    assert_eq!(profile.lines().count(), 3);
    assert_eq!(profile.lines().filter(|l| l.ends_with("<- q")).count(), 1);
}

#[test]
fn explain_is_rejected_for_baselines() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t", b"abcabc");
    let p = write(&dir, "p", b"bc");
    assert!(!run(&["search", "--algo", "hor", "--pattern-file", &p, "--text-file", &t, "--explain"]).status.success());
}

#[test]
fn freq_prints_probabilities() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t", &[0, 0, 0, 1]);
    let out = stdout(&run(&["freq", "--text-file", &t, "--sigma", "3"]));
    assert_eq!(out, "0,0.75\n1,0.25\n2,0\n");
}

#[test]
fn table_prints_shifts() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p", &[0, 1, 0, 1]);
    let table = |rule: &str, extra: &[&str]| {
        let mut args = vec!["table", "--rule", rule, "--pattern-file", &p, "--sigma", "4"];
        args.extend_from_slice(extra);
        stdout(&run(&args))
    };
    assert_eq!(table("hbc", &[]), "0,1\n1,2\n2,4\n3,4\n");
    assert_eq!(table("qbc", &[]), "0,2\n1,1\n2,5\n3,5\n");
    assert_eq!(table("sm", &[]), "0,2\n1,2\n2,5\n3,5\n");
    assert_eq!(table("wc", &["--q", "2"]), "0,2\n1,1\n2,3\n3,3\n");
    assert_eq!(table("wc", &[]), table("qbc", &[]));
}

#[test]
fn bench_csv_schema() {
    let out = stdout(&run(&[
        "bench", "--dist", "uniform", "--sigma", "2", "--n", "20000", "--patterns", "5", "--lengths", "2,8,32",
        "--algos", "hor,qs,sm,wc", "--format", "csv", "--no-timing", "--seed", "4",
    ]));
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "dist,sigma,lambda,n,m,algo,mean_adv,total_shifts,total_cmps,median_runtime_s,seed");
    assert_eq!(lines.len(), 1 + 3 * 4);
    for row in &lines[1..] {
        let fields: Vec<_> = row.split(',').collect();
        assert_eq!(fields.len(), 11, "{row}");
        assert_eq!(&fields[..4], ["uniform", "2", "", "20000"]);
        assert!(fields[6].parse::<f64>().unwrap() >= 1.0);
        assert_eq!(fields[9], "");
        assert_eq!(fields[10], "4");
    }
}

#[test]
fn bench_markdown_with_timing() {
    let out = stdout(&run(&[
        "bench", "--dist", "powerlaw", "--sigma", "4", "--n", "5000", "--patterns", "3", "--lengths", "4,16",
        "--repeats", "1",
    ]));
    assert!(out.contains("### Average advancement"));
    assert!(out.contains("### Median running time (s)"));
    assert!(out.contains("| WC |"));
}

#[test]
fn bad_input_exits_nonzero() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t", b"abracadabra");
    let p = write(&dir, "p", b"abra");
    let empty = write(&dir, "empty", b"");
    let cases: Vec<Vec<&str>> = vec![
        vec!["search", "--algo", "hor", "--pattern-file", &p, "--text-file", &t, "--sigma", "4"],
        vec!["search", "--algo", "hor", "--pattern-file", &empty, "--text-file", &t],
        vec!["search", "--algo", "hor", "--pattern-file", "/nonexistent", "--text-file", &t],
        vec!["bench", "--dist", "uniform", "--sigma", "2", "--n", "100", "--lengths", "200", "--no-timing"],
        vec!["bench", "--dist", "uniform", "--sigma", "2", "--n", "100", "--algos", "naive", "--no-timing"],
        vec!["gen", "--dist", "uniform", "--sigma", "0", "--out", "/dev/null"],
        vec!["table", "--rule", "wc", "--pattern-file", &p, "--q", "9"],
    ];
    for args in cases {
        let out = run(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
