use std::process::{Command, Output};

fn progtab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_progtab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_has_one_line_per_row() {
    let o = progtab(&["table", "F (a & b)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 9);
}

#[test]
fn table_csv_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = progtab(&[
        "table",
        "a | b",
        "--mode",
        "prop",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 9);
}

#[test]
fn weights_in_full_count_mode() {
    let o = progtab(&["weights", "F (a & b & c)", "--count-mode", "full"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.contains("\t1/1\t")), "{text}");
}

#[test]
fn equiv_reduce_and_synth() {
    let e = stdout(&progtab(&["equiv", "a | (b & c)"]));
    assert!(e.contains("class\tb c"), "{e}");
    let r = stdout(&progtab(&["reduce", "F (a1 & a2 & a3)"]));
    assert!(r.starts_with("reduced\tF (a1 & a2)"), "{r}");
    assert!(r.contains("dropped\ta3"), "{r}");
    let s = progtab(&["synth", "a | (b & c)", "--target", "a", "--mode", "prop"]);
    assert!(s.status.success());
    assert_eq!(stdout(&s).trim(), "!b | !c");
}

#[test]
fn plan_is_json() {
    let o = progtab(&["plan", "F (b | (a1 & a2 & c))", "--topo", "A:a1,a2;B:b;C:c"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring"], serde_json::json!(["B", "A", "C"]));
}

#[test]
fn monitor_reads_a_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.jsonl");
    std::fs::write(
        &path,
        "{\"a\":false,\"b\":false}\n{\"a\":false,\"b\":true}\n{\"a\":true,\"b\":true}\n",
    )
    .unwrap();
    let trace = path.to_str().unwrap();
    for extra in [&[][..], &["--baseline"][..]] {
        let mut args = vec![
            "monitor",
            "F (a & b)",
            "--topo",
            "A:a;B:b",
            "--trace",
            trace,
        ];
        args.extend_from_slice(extra);
        let o = progtab(&args);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.contains("verdict\t⊤"), "{text}");
        assert!(text.contains("centralized\t⊤\t3"), "{text}");
        assert!(text.contains("\"msg_count\""), "{text}");
    }
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let o = progtab(&[
        "bench",
        "--class",
        "absence",
        "--count",
        "4",
        "--len",
        "10",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("pattern,monitor,trace,msg_count,msg_bits,mem_bits"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(progtab(&["table", "a &"]).status.code(), Some(2));
    assert_eq!(
        progtab(&["plan", "a & b", "--topo", "A:a"]).status.code(),
        Some(2)
    );
    assert_eq!(
        progtab(&["bench", "--class", "nope"]).status.code(),
        Some(2)
    );
    let wide: Vec<String> = (0..20).map(|i| format!("x{i}")).collect();
    assert_eq!(
        progtab(&["table", &wide.join(" | ")]).status.code(),
        Some(3)
    );
    assert_eq!(
        progtab(&[
            "monitor",
            "a",
            "--topo",
            "A:a",
            "--trace",
            "/nonexistent/trace.jsonl"
        ])
        .status
        .code(),
        Some(1)
    );
}
