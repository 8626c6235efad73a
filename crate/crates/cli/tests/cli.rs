use std::path::PathBuf;
use std::process::{Command, Output};

use graphprod::grf::{blocks_family, parse_grf};
use tempfile::TempDir;

const SQUARE: &str = "\
graph c4
vertices 4
edge 0 1
edge 1 2
edge 2 3
edge 3 0
end
graph k2 mult=2
vertices 2
edge 0 1
end
graph k1
vertices 1
end
";

const P3: &str = "graph p3\nvertices 3\nedge 0 1\nedge 1 2\nend\n";

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphprod"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn square_root_of_family() {
    let f = Files::new();
    let h = f.put("h.grf", SQUARE);
    let out = run(&["root", "--op=cartesian", "-n", "2", h.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let family = blocks_family(&parse_grf(&stdout(&out)).unwrap()).unwrap();
    let expected = blocks_family(
        &parse_grf("graph a\nvertices 2\nedge 0 1\nend\ngraph b\nvertices 1\nend\n").unwrap(),
    )
    .unwrap();
    assert!(family.same_components(&expected));
}

#[test]
fn factor_prime() {
    let f = Files::new();
    let p = f.put("p3.grf", P3);
    let out = run(&["factor", "--op=cartesian", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert!(
        first.starts_with('y') && !first[1..].contains(['y', 'x']),
        "{text}"
    );
}

#[test]
fn cancel_by_empty_family() {
    let f = Files::new();
    let h = f.put("h.grf", SQUARE);
    let e = f.put("e.grf", "");
    let out = run(&[
        "cancel",
        "--op=cartesian",
        "--side=right",
        h.to_str().unwrap(),
        e.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let bad = f.put("bad.grf", "graph a\nvertices 2\nedge 0 0\nend\n");
    let h = f.put("h.grf", SQUARE);
    let k2 = f.put("k2.grf", "graph k2\nvertices 2\nedge 0 1\nend\n");
    let two = f.put("two.grf", "graph k2 mult=2\nvertices 2\nedge 0 1\nend\n");
    assert_eq!(
        run(&["canon", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["canon", "/nonexistent/x.grf"]).status.code(), Some(2));
    assert_eq!(
        run(&["encode", "--op=lex", h.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["factor", "--op=hierarchical", k2.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["root", "--op=cartesian", "-n", "2", two.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&["encode", "--op=cartesian", "--bound=1", h.to_str().unwrap()])
            .status
            .code(),
        Some(5)
    );
}

#[test]
fn encode_json() {
    let f = Files::new();
    let h = f.put("h.grf", SQUARE);
    let out = run(&["--json", "encode", "--op=cartesian", h.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "encode");
    assert_eq!(v["series"], "1 + 2*y0 + y0^2");
    assert_eq!(v["registry"]["letters"][0]["vertices"], 2);
}

#[test]
fn product_then_cancel() {
    let f = Files::new();
    let a = f.put(
        "a.grf",
        "graph a\nvertices 2\nroots 0\nedge 0 1\nend\ngraph b\nvertices 1\nroots 0\nend\n",
    );
    let c = f.put(
        "c.grf",
        "graph c\nvertices 3\nroots 1\nedge 0 1\nedge 1 2\nend\n",
    );
    let out = run(&[
        "product",
        "--op=rooted-hierarchical",
        a.to_str().unwrap(),
        c.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let p = f.put("p.grf", &stdout(&out));
    let out = run(&[
        "cancel",
        "--op=rooted-hierarchical",
        "--side=right",
        p.to_str().unwrap(),
        c.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let got = blocks_family(&parse_grf(&stdout(&out)).unwrap()).unwrap();
    let want = blocks_family(&parse_grf(&std::fs::read_to_string(&a).unwrap()).unwrap()).unwrap();
    assert!(got.same_components(&want));
}

#[test]
fn power_and_canon_are_deterministic() {
    let f = Files::new();
    let p = f.put("p3.grf", P3);
    let a = run(&["power", "--op=strong", "-n", "2", p.to_str().unwrap()]);
    let b = run(&["power", "--op=strong", "-n", "2", p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let sq = f.put("sq.grf", &stdout(&a));
    let c = run(&["canon", sq.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).starts_with("key 09000000"));
}

#[test]
fn demo_and_selftest() {
    let out = run(&["demo-counterexample", "--bound=2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("H_a^2 = w*y0^2\n"));
    let out = run(&["selftest", "--seed=3", "--iters=5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains(", 0 failed"));
}
