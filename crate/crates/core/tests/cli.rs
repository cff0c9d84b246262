use std::process::Command;

use modknot::word::parse;

fn modknot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modknot"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn bound_smoke() {
    let (code, out, err) = modknot(&["--format", "json", "bound", "xy"]);
    assert_eq!(code, 0, "{err}");
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["record"], "bound");
    assert_eq!(recs[0]["n_gamma"], 1);
    assert_eq!(recs[0]["chain_lengths"], "1,1,1,1");
    let total = recs[0]["total_bound"].as_f64().unwrap();
    assert!((total - 54.0 * modknot::v_max()).abs() < 1e-9);
}

#[test]
fn length_of_x3y2() {
    let (code, out, _) = modknot(&["--format", "json", "length", "x^3y^2"]);
    assert_eq!(code, 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["trace"], "8");
    assert_eq!(
        (
            r["a"].as_str(),
            r["b"].as_str(),
            r["c"].as_str(),
            r["d"].as_str()
        ),
        (Some("7"), Some("3"), Some("2"), Some("1"))
    );
    let l = r["length"].as_f64().unwrap();
    assert!((l - 4f64.acosh()).abs() < 1e-11);
}

#[test]
fn covers_discrepancy_flagged() {
    let (code, out, _) = modknot(&["covers", "degree", "--genus", "0", "--punctures", "5"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "cover genus=0 punctures=5 family=sphere chain=S_{0,5}->S_{0,3}->M chain_degree=18 stated_degree=12 oracle_degree=18 consistent=false"
    );
    let (_, out, _) = modknot(&[
        "covers",
        "constant",
        "--base",
        "2.5",
        "--genus",
        "1",
        "--punctures",
        "2",
    ]);
    assert!(
        out.contains("degree=12") && out.contains("constant=30"),
        "{out}"
    );
}

#[test]
fn exit_codes_and_single_line_diagnostics() {
    for (args, want) in [
        (&["nonsense"][..], 2),
        (&["bound"], 4),
        (&["code", "parse", "xzy"], 3),
        (&["template", "crossings", "xy", "yx"], 3),
        (&["bound", "family", "--n", "0", "--m", "3"], 4),
        (&["lobachevsky", "eval", "inf"], 4),
        (&["--precision", "5", "length", "xy"], 4),
    ] {
        let (code, out, err) = modknot(args);
        assert_eq!(code, want, "{args:?}: {err}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn printed_words_reparse() {
    let (_, out, _) = modknot(&[
        "--format",
        "json",
        "bound",
        "corpus",
        "--seed",
        "3",
        "--count",
        "20",
        "--max-exponent",
        "9",
    ]);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 21);
    for r in &recs[..20] {
        let w = r["words"].as_str().unwrap();
        assert_eq!(parse(w).unwrap().to_string(), w);
    }
    assert_eq!(recs[20]["record"], "summary");
    let (_, out, _) = modknot(&["code", "canon", "yxx"]);
    assert_eq!(out.trim(), "canon word=x^2y letters=xxy");
    let (_, out, _) = modknot(&["code", "cf", "x^3y^2xy"]);
    assert_eq!(out.trim(), "cf word=x^3y^2xy period=4 even_cf=3,2,1,1");
}

#[test]
fn corpus_output_is_byte_identical() {
    let args = [
        "--format", "csv", "bound", "corpus", "--seed", "42", "--count", "200",
    ];
    let (c1, a, _) = modknot(&args);
    let (c2, b, _) = modknot(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.starts_with("record,words,n_gamma,"));
}

#[test]
fn template_records() {
    let (_, out, _) = modknot(&["--format", "csv", "template", "arrange", "x^3y^2"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[2], "record,position,word_id,shift,successor,band");
    let succ: Vec<&str> = lines[3..]
        .iter()
        .map(|l| l.split(',').nth(4).unwrap())
        .collect();
    assert_eq!(succ, ["1", "2", "4", "0", "3"]);
    let (_, out, _) = modknot(&["template", "crossings", "x^5y^3"]);
    assert!(out.contains("crossings=7"), "{out}");
    let (_, out, _) = modknot(&["template", "chains", "xy"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("chain ")).count(), 4);
}

#[test]
fn lobachevsky_eval_and_precision() {
    let (_, out, _) = modknot(&["lobachevsky", "eval", "0.5235987755982988"]);
    assert!(out.contains("value=0.507470803204827"), "{out}");
    let (_, out, _) = modknot(&["lobachevsky", "eval", "-0.5235987755982988"]);
    assert!(out.contains("value=-0.507470803204827"), "{out}");
    let (_, out, _) = modknot(&["--precision", "6", "length", "xy"]);
    assert!(out.contains("length=0.962424"), "{out}");
}

#[test]
fn family_rows() {
    let (code, out, _) = modknot(&["bound", "family", "--n", "2", "--m", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("family n=1 m=1 words=xy "));
    assert!(lines[5].starts_with("family n=2 m=3 words=x^2y^3 "));
}
