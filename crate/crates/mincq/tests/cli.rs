use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mincq::format::{CornerFile, Document};
use mincq::registry::EXAMPLES;
use mincq_core::patch::null_point;
use mincq_core::CRational;

fn mincq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mincq"))
        .args(args)
        .output()
        .expect("run mincq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ex1_corners() -> String {
    let c = CRational::from_ints;
    let d = [
        null_point(&c(1, 0), &c(0, 0)).unwrap(),
        null_point(&c(0, 1), &c(1, 0)).unwrap(),
        null_point(&c(1, 0), &c(2, 0)).unwrap(),
        null_point(&c(5, -2), &c(8, 0)).unwrap(),
    ];
    let file = CornerFile {
        rect: Some([c(0, 0), c(1, 0), c(1, 2), c(0, 2)]),
        phi: None,
        directions: Some(d),
        scales: None,
    };
    Document::Corners(Box::new(file)).to_json_string()
}

#[test]
fn every_example_runs_and_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    for e in EXAMPLES {
        let out = dir.path().join(e.name);
        let o = mincq(&["example", e.name, "--out", path(&out)]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}:\n{}{}",
            e.name,
            stdout(&o),
            stderr(&o)
        );
        assert!(stdout(&o).ends_with("PASS\n"));
        assert!(fs::read_dir(&out).unwrap().count() > 0);
    }
    let cat = fs::read_to_string(dir.path().join("catenoid/catenoid.txt")).unwrap();
    assert!(cat.contains("-1/2*ln(u^2 + v^2)"), "{cat}");
    let ex1 = fs::read_to_string(dir.path().join("ex1/ex1.txt")).unwrap();
    assert!(
        ex1.contains("-125*u^3 - 125*u^2 + 375*u*v^2 + 625*u + 125*v^2"),
        "{ex1}"
    );
}

#[test]
fn unknown_example_lists_known_names() {
    let o = mincq(&["example", "unknown"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("unknown example `unknown`") && stderr(&o).contains("sylvester-rank3")
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert_eq!(
            mincq(&["example", "ex1", "--out", path(d)]).status.code(),
            Some(0)
        );
    }
    for f in [
        "ex1.obj",
        "ex1.csv",
        "ex1.txt",
        "ex1.conditions.txt",
        "ex1.pair.json",
    ] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let r1 = mincq(&["verify", path(&a.join("ex1.pair.json"))]);
    let r2 = mincq(&["verify", path(&a.join("ex1.pair.json"))]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn converted_files_reparse_and_keep_phi() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src");
    for name in ["enneper", "ex1", "catenoid", "richmond"] {
        assert_eq!(
            mincq(&["example", name, "--out", path(&src)]).status.code(),
            Some(0)
        );
        let pair = src.join(format!("{name}.pair.json"));
        let phi = Document::from_json_str(&fs::read_to_string(&pair).unwrap()).unwrap();
        let Document::Curve { repr, .. } = &phi else {
            panic!()
        };
        let want = repr.raw_phi().unwrap();
        let polynomial = want.is_polynomial();
        let mut from = ("pair", pair.clone());
        for to in ["phi", "fg", "pair", "pqw", "phi"] {
            if to == "pqw" && !polynomial {
                continue;
            }
            let out = dir.path().join(format!("{name}.{to}.json"));
            let o = mincq(&[
                "convert",
                "--from",
                from.0,
                "--to",
                to,
                "--in",
                path(&from.1),
                "--out",
                path(&out),
            ]);
            assert_eq!(
                o.status.code(),
                Some(0),
                "{name} {} -> {to}: {}",
                from.0,
                stderr(&o)
            );
            let text = fs::read_to_string(&out).unwrap();
            let doc = Document::from_json_str(&text).unwrap();
            assert_eq!(doc.to_json_string(), text, "{name} {to}: rewrite differs");
            let Document::Curve { repr, .. } = &doc else {
                panic!()
            };
            assert_eq!(repr.raw_phi().unwrap(), want, "{name} {to}: Φ changed");
            from = (to, out);
        }
    }
}

#[test]
fn convert_rejects_wrong_source_kind() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        mincq(&["example", "enneper", "--out", path(dir.path())])
            .status
            .code(),
        Some(0)
    );
    let o = mincq(&[
        "convert",
        "--from",
        "fg",
        "--to",
        "phi",
        "--in",
        path(&dir.path().join("enneper.pair.json")),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_reports_defects_and_residues() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"kind":"phi","phi":[[0,[["0","0"],["1","0"],["0","0"],["0","0"]]]]}"#,
    )
    .unwrap();
    let o = mincq(&["verify", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).contains("DEFECT isotropy defect 1"),
        "{}",
        stdout(&o)
    );

    let res = dir.path().join("res.json");
    let z = r#"["0","0"]"#;
    let one = r#"["1","0"]"#;
    fs::write(
        &res,
        format!(r#"{{"kind":"pair","a":[[0,[{one},{z},{z},{z}]]],"lambda_num":[[-1,{one}]],"lambda_den":[[0,{one}]]}}"#),
    )
    .unwrap();
    let o = mincq(&["verify", path(&res)]);
    assert!(stdout(&o).contains("NonzeroResidue at 0"), "{}", stdout(&o));

    let good = dir.path().join("good");
    assert_eq!(
        mincq(&["example", "rational", "--out", path(&good)])
            .status
            .code(),
        Some(0)
    );
    let o = mincq(&["verify", path(&good.join("rational.pair.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(
        text.contains("ok isotropy defect 0") && text.contains("residue at 0: none"),
        "{text}"
    );
}

#[test]
fn parse_errors_name_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("broken.json");
    fs::write(
        &f,
        r#"{"kind":"phi","phi":[[0,[["0","0"],["1/x","0"],["0","0"],["0","0"]]]]}"#,
    )
    .unwrap();
    let o = mincq(&["verify", path(&f)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("broken.json: phi[0][1].re"),
        "{}",
        stderr(&o)
    );
    fs::write(&f, "{\"kind\":\"phi\",\n\"phi\":[[0]]}").unwrap();
    let o = mincq(&["verify", path(&f)]);
    assert!(stderr(&o).contains("phi[0]"), "{}", stderr(&o));
}

#[test]
fn patch_from_directions() {
    let dir = tempfile::tempdir().unwrap();
    let corners = dir.path().join("corners.json");
    fs::write(&corners, ex1_corners()).unwrap();
    let (obj, rep) = (
        dir.path().join("patch.obj"),
        dir.path().join("conditions.txt"),
    );
    let o = mincq(&[
        "patch",
        "--rect",
        "0,1,2,0",
        "--corners",
        path(&corners),
        "--grid",
        "5",
        "--out",
        path(&obj),
        "--report",
        path(&rep),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let report = fs::read_to_string(&rep).unwrap();
    assert!(report.contains("ok linear relation defect"), "{report}");
    assert!(
        report.contains("A = [5, 0, 0, 0] + [-1, 0, -4, 0]*z"),
        "{report}"
    );
    let mesh = fs::read_to_string(&obj).unwrap();
    assert_eq!(mesh.lines().filter(|l| l.starts_with("v ")).count(), 25);
    assert_eq!(mesh.lines().filter(|l| l.starts_with("f ")).count(), 16);
    assert!(mesh.starts_with("v 0 0 0\n") && !mesh.contains('\r'));
    let last_v = mesh.lines().position(|l| l.starts_with("f ")).unwrap();
    assert!(mesh.lines().skip(last_v).all(|l| l.starts_with("f ")));

    // the rectangle from the corner file gives the same report
    let o = mincq(&[
        "patch",
        "--corners",
        path(&corners),
        "--report",
        path(&dir.path().join("r2.txt")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(dir.path().join("r2.txt")).unwrap(),
        report
    );
}

#[test]
fn patch_with_violated_conditions_is_a_defect() {
    let c = CRational::from_ints;
    let d = [
        null_point(&c(1, 0), &c(0, 0)).unwrap(),
        null_point(&c(0, 1), &c(1, 0)).unwrap(),
        null_point(&c(1, 0), &c(2, 0)).unwrap(),
        null_point(&c(5, -2), &c(8, 0)).unwrap(),
    ];
    let file = CornerFile {
        rect: None,
        phi: Some(d),
        directions: None,
        scales: None,
    };
    let dir = tempfile::tempdir().unwrap();
    let corners = dir.path().join("corners.json");
    fs::write(&corners, Document::Corners(Box::new(file)).to_json_string()).unwrap();
    let o = mincq(&["patch", "--rect", "0,1,2,0", "--corners", path(&corners)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).contains("DEFECT linear relation"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn surface_writes_mesh_and_geometry_csv() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        mincq(&["example", "enneper", "--out", path(dir.path())])
            .status
            .code(),
        Some(0)
    );
    let (obj, csv) = (dir.path().join("s.obj"), dir.path().join("s.csv"));
    let o = mincq(&[
        "surface",
        "--pair",
        path(&dir.path().join("enneper.pair.json")),
        "--domain",
        "-1,1,-1,1",
        "--grid",
        "3x4",
        "--out",
        path(&obj),
        "--report",
        path(&csv),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let table = fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().next(), Some("u,v,x,y,z,H,E,F,G"));
    assert_eq!(table.lines().count(), 13);
    let mesh = fs::read_to_string(&obj).unwrap();
    assert_eq!(mesh.lines().filter(|l| l.starts_with("f ")).count(), 6);
    assert!(
        stdout(&o).contains("x(u,v) = 1/3*u^3 - u*v^2 - u"),
        "{}",
        stdout(&o)
    );

    let o = mincq(&[
        "surface",
        "--pair",
        path(&dir.path().join("enneper.pair.json")),
        "--part",
        "im",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = mincq(&[
        "surface",
        "--pair",
        path(&dir.path().join("enneper.pair.json")),
        "--grid",
        "3by3",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn phcurve_samples_and_residue() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ph.json");
    let z = r#"["0","0"]"#;
    let one = r#"["1","0"]"#;
    let two = r#"["2","0"]"#;
    fs::write(
        &f,
        format!(
            r#"{{"kind":"pair","a":[[0,[{one},{z},{one},{z}]],[1,[{z},{two},{z},{one}]]],"lambda_num":[[0,{one}]],"lambda_den":[[0,{one}]]}}"#
        ),
    )
    .unwrap();
    let csv = dir.path().join("c.csv");
    let o = mincq(&[
        "phcurve",
        "--preimage",
        path(&f),
        "--samples",
        "5",
        "--out",
        path(&csv),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("ok PH defect 0"));
    let table = fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().count(), 6);
    assert!(table.starts_with("t,x,y,z,dx,dy,dz,speed\n0,0,0,0,"));

    let o = mincq(&["phcurve", "--preimage", path(&f), "--lambda", "t^-1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("nonzero residue"), "{}", stderr(&o));
    let o = mincq(&["phcurve", "--preimage", path(&f), "--lambda", "2 + t^2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sylvester_classes() {
    let o = mincq(&[
        "sylvester",
        "--f",
        "I j + k",
        "--g",
        "I + sqrt(2)/2 (j + k)",
    ]);
    assert!(stdout(&o).contains("rank class Rank3"), "{}", stdout(&o));
    let o = mincq(&[
        "sylvester",
        "--f",
        "1 + 2i - j + 3k",
        "--g",
        "-1 - 3i + 2j + k",
    ]);
    let text = stdout(&o);
    assert!(
        text.contains("determinant 0") && text.contains("rank class Rank2"),
        "{text}"
    );
    let o = mincq(&["sylvester", "--f", "i", "--g", "1 + j"]);
    assert!(stdout(&o).contains("rank class Full"));
    let o = mincq(&["sylvester", "--f", "q", "--g", "j"]);
    assert_eq!(o.status.code(), Some(3));
}
