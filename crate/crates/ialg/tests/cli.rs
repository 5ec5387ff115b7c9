use std::path::Path;
use std::process::{Command, Output};

use ialg::script::{Command as Cmd, Flavor, LoopQuery, Statement, StatementKind, StructureExpr, TableFormat};
use ialg::{parse_script, render, Script};
use proptest::prelude::*;
use serde_json::Value;

fn ialg(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ialg"));
    c.args(args).env_remove("IALG_MAX_ORDER");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn script_file_runs() {
    let dir = tempfile::tempdir().unwrap();
    let script = write(
        dir.path(),
        "b.ial",
        "# a bisemigroup\nS = semigroup zmod 13 add\nM = semigroup zmod 16 mul\nB = union S M\nclassify B\ncheck B idempotent-law\n",
    );
    let o = ialg(&["run", &script], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = lines(&o);
    assert_eq!(out.len(), 2);
    assert_eq!(out[0]["label"], "group × monoid");
    assert_eq!(out[0]["order"], 208);
    assert_eq!(out[1]["line"], 6);
    // Z_13 under addition has only the trivial idempotent.
    assert_eq!(out[1]["grade"], "quasi-smarandache");
}

#[test]
fn output_is_deterministic() {
    let text = "L = loop 15 8; loopinfo L centers; loopinfo L subloops; smarandache L; audit T-CAUCHY --range n=5..9";
    let a = ialg(&["-e", text], &[]);
    let b = ialg(&["-e", text], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(ialg(&["-e", ""], &[]).status.code(), Some(0));
    assert!(ialg(&["-e", ""], &[]).stdout.is_empty());

    let bad = ialg(&["-e", "L = loop 9 3"], &[]);
    assert_eq!(bad.status.code(), Some(1));
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.contains("line 1") && err.contains("invalid loop parameters"), "{err}");

    let parse = ialg(&["-e", "L = loop 5 2; tabel L"], &[]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8(parse.stderr).unwrap().contains("line 2, column 2"));

    let undefined = ialg(&["-e", "classify X"], &[]);
    assert_eq!(undefined.status.code(), Some(2));
    assert!(String::from_utf8(undefined.stderr).unwrap().contains("undefined name 'X'"));

    assert_eq!(ialg(&["run", "/no/such/script.ial"], &[]).status.code(), Some(2));
}

#[test]
fn errors_keep_the_run_going() {
    let o = ialg(&["-e", "A = loop 5 2; check A no-such-law; classify A"], &[]);
    assert_eq!(o.status.code(), Some(1));
    let out = lines(&o);
    assert_eq!(out.len(), 2);
    assert!(out[0]["error"].as_str().unwrap().contains("no-such-law"));
    assert_eq!(out[1]["label"], "loop");
}

#[test]
fn max_order_from_env() {
    let text = "A = group zmod 50; B = union A A A; classify B";
    assert_eq!(ialg(&["-e", text], &[]).status.code(), Some(0));
    let capped = ialg(&["-e", text], &[("IALG_MAX_ORDER", "1000")]);
    assert_eq!(capped.status.code(), Some(1));
    assert!(String::from_utf8(capped.stderr).unwrap().contains("125000"));
    assert_eq!(ialg(&["-e", text], &[("IALG_MAX_ORDER", "lots")]).status.code(), Some(2));
}

#[test]
fn loop_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l52.csv");
    let o = ialg(&["-e", &format!("L = loop 5 2 plain; export L {}", path.display())], &[]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[3], "2,2,5,e,4,1,3");

    let inline = lines(&ialg(&["-e", "L = loop 5 2 plain; table L --format csv"], &[]));
    assert_eq!(inline[0]["csv"].as_str().unwrap(), csv);
}

#[test]
fn product_table_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = ialg(&["-e", &format!("A = group zmod 12; U = group units 5; P = union A U; export P {}", path.display())], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 48);
    assert_eq!(doc["table"].as_array().unwrap().len(), 48);
    assert_eq!(doc["elements"][0], "([0,0],[0,1])");
}

#[test]
fn export_to_unwritable_path() {
    let o = ialg(&["-e", "L = loop 5 2; export L /no/such/dir/l.csv"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("cannot write"));
}

#[test]
fn pretty_array() {
    let o = ialg(&["--pretty", "-e", "L = loop 7 3; classify L; loopinfo L normalizers e,1"], &[]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 2);
    assert_eq!(doc[1]["subset"], serde_json::json!(["e", "[0,1]"]));
}

#[test]
fn worked_commands() {
    let out = lines(&ialg(
        &[
            "-e",
            "A = semigroup zmod 40 mul; B = semigroup zmod 24 mul; P = union A B; smarandache P; \
             Z = semigroup zmod 12 mul; find Z zero-divisors; \
             G = groupoid zmod 6 2 5; ideals G --side left; subs G --max 3; \
             N = semigroup zmod 9 mul; M = semigroup zmod 12 mul; Q = union N M; find Q idempotents --quasi 10",
        ],
        &[],
    ));
    assert_eq!(out[0]["witness"], serde_json::json!([["[0,1]", "[0,39]"], ["[0,1]", "[0,23]"]]));
    let zd: Vec<&str> = out[1]["elements"].as_array().unwrap().iter().map(|e| e["element"].as_str().unwrap()).collect();
    assert_eq!(zd, ["[0,2]", "[0,3]", "[0,4]", "[0,6]", "[0,8]", "[0,9]", "[0,10]"]);
    assert_eq!(out[2]["side"], "left");
    assert!(out[3]["items"].as_array().unwrap().iter().all(|i| i["order"].as_u64().unwrap() <= 3));
    assert!(out[4]["quasi"].as_bool().unwrap());
    let quasi: Vec<&str> = out[4]["elements"].as_array().unwrap().iter().map(|e| e["element"].as_str().unwrap()).collect();
    assert!(quasi.contains(&"([0,1],[0,0])"), "{quasi:?}");
    assert!(quasi.iter().all(|q| q.ends_with(",[0,0])")));
}

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Interval), Just(Flavor::Plain)]
}

fn expr() -> impl Strategy<Value = StructureExpr> {
    prop_oneof![
        (1u64..50, any::<bool>(), flavor()).prop_map(|(n, mul, flavor)| StructureExpr::Semigroup { n, mul, flavor }),
        (1u64..50, -9i64..50, -9i64..50, flavor())
            .prop_map(|(n, t, u, flavor)| StructureExpr::Groupoid { n, t, u, flavor }),
        (1u64..50, 1u64..50, flavor()).prop_map(|(n, m, flavor)| StructureExpr::Loop { n, m, flavor }),
        (1u64..50, flavor()).prop_map(|(n, flavor)| StructureExpr::Units { n, flavor }),
        (1usize..6, any::<bool>(), flavor()).prop_map(|(k, group, flavor)| StructureExpr::Sym { k, group, flavor }),
    ]
}

/// Scripts that bind `S0..Sk`, then combine and query them.
fn script() -> impl Strategy<Value = Script> {
    (prop::collection::vec(expr(), 1..5), prop::collection::vec(0usize..8, 1..4), 0usize..3).prop_map(
        |(exprs, picks, gap)| {
            let k = exprs.len();
            let mut statements = Vec::new();
            let mut line = 1;
            let mut push = |kind| {
                statements.push(Statement { line, kind });
                line += 1 + gap;
            };
            for (i, e) in exprs.into_iter().enumerate() {
                push(StatementKind::Let(format!("S{i}"), e));
            }
            push(StatementKind::Let("P".into(), StructureExpr::Union(picks.iter().map(|p| format!("S{}", p % k)).collect())));
            push(StatementKind::Let(
                "M".into(),
                StructureExpr::Matrix { rows: 2, cols: 3, base: "S0".into(), mul: picks[0] % 2 == 0 },
            ));
            push(StatementKind::Command(Cmd::Table { name: "P".into(), format: TableFormat::Csv }));
            push(StatementKind::Command(Cmd::LoopInfo {
                name: "S0".into(),
                query: LoopQuery::Normalizers(vec!["e".into(), "[0,1]".into()]),
            }));
            push(StatementKind::Command(Cmd::Audit { claim: "T-IDEM".into(), range: Some("n=2..9".into()) }));
            Script { statements }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_round_trips(s in script()) {
        prop_assert_eq!(parse_script(&render(&s)).unwrap(), s);
    }
}
