use std::process::Command as Process;

use fincat::Error;
use fincat_cli::commands::{run_command, Command, Options, Report};
use fincat_cli::corpus::bundled_texts;
use fincat_cli::workspace::{load_str, load_workspace, to_json, Workspace};
use serde_json::json;

const BROKEN: &str = r#"{"categories": {"B": {
  "objects": ["*"],
  "morphisms": [{"id": "1", "src": "*", "tgt": "*"}, {"id": "a", "src": "*", "tgt": "*"}, {"id": "b", "src": "*", "tgt": "*"}],
  "identities": {"*": "1"},
  "compose": [["a", "a", "b"], ["a", "b", "b"], ["b", "a", "a"], ["b", "b", "b"]]}}}"#;

fn corpus() -> Workspace {
    load_str(&bundled_texts()).unwrap()
}

fn run(cmd: Command) -> Report {
    run_command(&corpus(), &cmd, &Options::default()).unwrap()
}

fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fincat(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_fincat")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn loads_monoid_file() {
    let ws = load_workspace(&[fixture("monoid_M.json")]).unwrap();
    let m = ws.category("M").unwrap();
    assert_eq!(m.object_count(), 1);
    assert_eq!(m.morphism_count(), 2);
}

#[test]
fn broken_composition_names_the_triple() {
    let err = load_str(&[BROKEN]).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    let text = err.to_string();
    // (a . b) . a = a but a . (b . a) = a . a = b
    assert!(text.contains("(a, b, a)"), "{text}");
}

#[test]
fn duplicate_names_are_rejected() {
    let m = std::fs::read_to_string(fixture("monoid_M.json")).unwrap();
    let err = load_str(&[&m, &m]).unwrap_err();
    assert!(matches!(&err, Error::DuplicateName(n) if n == "M"), "{err}");
}

#[test]
fn parse_errors_carry_position() {
    let err = load_str(&["{\"categories\": {\n  \"X\": {\"objects\": [1]}}}"]).unwrap_err();
    match err {
        Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 21)),
        other => panic!("{other}"),
    }
    let err = load_str(&[
        "{\"functors\": {\"F\": {\"source\": \"Nope\", \"target\": \"Nope\", \"objects\": {}, \"morphisms\": {}}}}",
    ])
    .unwrap_err();
    assert!(
        matches!(err, Error::UnresolvedReference { kind: "category", .. }),
        "{err}"
    );
}

#[test]
fn canonical_form_is_a_fixpoint() {
    let ws = corpus();
    let once = to_json(&ws.to_document());
    let again = to_json(&load_str(&[&once]).unwrap().to_document());
    assert_eq!(once, again);
    // A fragment written with omitted identities and numeric elements
    // loads to the same entity as its canonical form.
    let loose = r#"{"categories": {"Z2": {"objects": ["*"], "morphisms": [{"id": "1", "src": "*", "tgt": "*"}, {"id": "g", "src": "*", "tgt": "*"}],
        "identities": {"*": "1"}, "compose": [["g", "g", "1"]]}},
      "presheaves": {"P": {"on": "Z2", "sets": {"*": [0, 1]}, "actions": {"g": {"0": 1, "1": 0}}}}}"#;
    let ws = load_str(&[loose]).unwrap();
    let canonical = to_json(&ws.to_document());
    let reloaded = load_str(&[&canonical]).unwrap();
    assert_eq!(
        reloaded.presheaf("P").unwrap().presheaf,
        ws.presheaf("P").unwrap().presheaf
    );
    assert_eq!(to_json(&reloaded.to_document()), canonical);
}

#[test]
fn cauchy_of_m() {
    let r = run(Command::Cauchy { category: "M".into() });
    assert_eq!(r.json["objects"].as_array().unwrap().len(), 2);
    assert_eq!(r.json["homs"], json!([[2, 1], [1, 1]]));
    assert!(r.text().contains("hom sizes: 2/1/1/1"));
}

#[test]
fn m_and_its_completion_are_morita_equivalent() {
    let r = run(Command::Morita {
        a: "M".into(),
        b: "QM".into(),
    });
    assert_eq!(r.json["equivalent"], json!(true));
    assert!(r.json["forward"]["objects"].is_array());
    assert!(r.json["backward"]["objects"].is_array());
    let r = run(Command::Morita {
        a: "Z2".into(),
        b: "Z3".into(),
    });
    assert_eq!(r.json["equivalent"], json!(false));
}

#[test]
fn orbits_do_not_commute_with_pullbacks() {
    let r = run(Command::Commute {
        args: vec!["example8.2".into()],
    });
    assert_eq!(r.json["commutes"], json!(false));
    assert_eq!(r.json["colimit_of_limits"], json!(2));
    assert_eq!(r.json["limit_of_colimits"], json!(1));
}

#[test]
fn recognition_of_the_e_completion() {
    let r = run(Command::Recognize {
        functor: "Z".into(),
        class: "E".into(),
    });
    assert_eq!(r.json["all"], json!(true));
    let r = run(Command::Recognize {
        functor: "collapse".into(),
        class: "E".into(),
    });
    assert_eq!(r.json["fully_faithful"], json!(false));
}

#[test]
fn set_limits_and_colimits() {
    // pullback of 2 -> 1 <- 2 has 4 elements
    let r = run(Command::Limit {
        diagram: "cospan-sets".into(),
    });
    assert_eq!(r.json["size"], json!(4));
    let r = run(Command::Wlimit {
        weight: "pullback".into(),
        diagram: "cospan-sets".into(),
    });
    assert_eq!(r.json["size"], json!(4));
    // one orbit of the free Z/2-set
    let r = run(Command::Wcolimit {
        weight: "orbits".into(),
        diagram: "free-orbit".into(),
    });
    assert_eq!(r.json["size"], json!(1));
}

#[test]
fn closure_cap_sets_exit_code() {
    let ws = corpus();
    let mut opts = Options::default();
    opts.caps.rounds = 1;
    let cmd = Command::Closure {
        class: "finite-colimits".into(),
        category: "Two".into(),
    };
    assert_eq!(run_command(&ws, &cmd, &opts).unwrap().exit_code, 4);
    let finite = Command::Closure {
        class: "E".into(),
        category: "M".into(),
    };
    let r = run_command(&ws, &finite, &opts).unwrap();
    assert_eq!((r.exit_code, r.json["fixpoint"].clone()), (4, json!(false)));
    let r = run_command(&ws, &finite, &Options::default()).unwrap();
    assert_eq!((r.exit_code, r.json["fixpoint"].clone()), (0, json!(true)));
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("fincat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, BROKEN).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"categories\": ").unwrap();

    let (code, out, _) = fincat(&["cauchy", "M"]);
    assert_eq!(code, 0);
    assert!(out.contains("2 objects"));
    assert_eq!(fincat(&["-w", bad.to_str().unwrap(), "validate"]).0, 2);
    let (code, _, err) = fincat(&["-w", broken.to_str().unwrap(), "validate"]);
    assert_eq!(code, 3);
    assert!(err.contains("(a, b, a)"));
    assert_eq!(fincat(&["closure", "pushout", "Span", "--cap-rounds", "1"]).0, 4);
    assert_eq!(fincat(&["cauchy", "Nope"]).0, 3);
    assert_eq!(fincat(&["no-such-command"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "closure", "finite-colimits", "Two", "--cap-rounds", "1"][..],
        &["absolute-sample", "orbits", "--samples", "2", "--seed", "5"],
    ] {
        let (c1, a, _) = fincat(args);
        let (c2, b, _) = fincat(args);
        assert_eq!((c1, &a), (c2, &b));
    }
}

#[test]
fn every_command_runs_on_the_corpus() {
    let s = |x: &str| x.to_string();
    let cmds = vec![
        Command::Validate { names: vec![] },
        Command::Colimit {
            diagram: s("span-sets"),
        },
        Command::Kan {
            functor: s("Z"),
            diagram: s("m-set"),
        },
        Command::Nerve { functor: s("Z") },
        Command::Elements { presheaf: s("orbits") },
        Command::Filtered { category: s("N5") },
        Command::Connected {
            category: s("Discrete2"),
        },
        Command::Lift { f: s("E"), h: s("E") },
        Command::Extend { g: s("E"), h: s("E") },
        Command::Adjoint { module: s("orbits") },
        Command::Smallproj { presheaf: s("E") },
        Command::Isbell { presheaf: s("pushout") },
        Command::Duality { category: s("M") },
        Command::Saturation {
            presheaf: s("orbits"),
            class: s("E"),
        },
        Command::Cocomplete {
            category: s("QM"),
            class: s("E"),
        },
        Command::Atoms {
            category: s("Two"),
            class: s("initial"),
        },
        Command::Flat { presheaf: s("orbits") },
        Command::Continuous {
            presheaf: s("orbits"),
            class: s("pushout"),
        },
        Command::AbsoluteSample {
            presheaf: s("E"),
            samples: Some(1),
        },
        Command::Canonical,
    ];
    let ws = corpus();
    for cmd in cmds {
        let r = run_command(&ws, &cmd, &Options::default()).unwrap_or_else(|e| panic!("{cmd:?}: {e}"));
        assert_eq!(r.exit_code, 0, "{cmd:?}");
        assert!(!r.lines.is_empty());
    }
}
