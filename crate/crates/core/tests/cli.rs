use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aoi-seed"))
}

#[test]
fn writes_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("line.txt");
    std::fs::write(&graph, "# a line\n1 2\n2 3\n3 4\n4 5\n").unwrap();
    let out = bin()
        .args(["--graph", graph.to_str().unwrap(), "--k", "1,2", "--algorithm", "cyclic,kminisum"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("algorithm,k,delta"));
    assert!(lines[1].starts_with("cyclic,1,1,1,"));
}

#[test]
fn exit_codes_distinguish_input_and_io_errors() {
    assert_eq!(bin().args(["--k", "1"]).status().unwrap().code(), Some(1));
    assert_eq!(bin().args(["--graph", "/nonexistent/g.txt", "--k", "1"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn malformed_edge_list_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.txt");
    std::fs::write(&graph, "1 two\n").unwrap();
    let out = bin().args(["--graph", graph.to_str().unwrap(), "--k", "1"]).output().unwrap();
    assert_ne!(out.status.code(), Some(0));
    assert!(!out.stderr.is_empty());
}
