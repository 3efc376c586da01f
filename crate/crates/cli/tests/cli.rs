use assert_cmd::Command;
use serde_json::{json, Value};

fn spectra() -> Command {
    let mut cmd = Command::cargo_bin("spectra").unwrap();
    cmd.env_remove("SPECTRA_THREADS");
    cmd
}

fn run(args: &[&str]) -> (i32, String) {
    let out = spectra().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, stdout) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(stdout.trim()).unwrap()
}

#[test]
fn spectrum_examples() {
    let v = json_of(&["spectrum", "--p", "3", "--n", "5"]);
    assert_eq!(v["spectrum"]["omega"], json!({"0": 60, "1": 123, "2": 60}));
    assert_eq!(v["spectrum"]["agreement"], json!(true));
    assert_eq!(v["d"], json!(120));

    let v = json_of(&["spectrum", "--p", "11", "--n", "1"]);
    assert_eq!(
        v["spectrum"]["omega"],
        json!({"0": 4, "1": 5, "2": 0, "3": 2})
    );
    assert_eq!(v["spectrum"]["closed_form"], v["spectrum"]["omega"]);
    assert_eq!(v["uniformity"], json!(3));

    let v = json_of(&["spectrum", "--p", "3", "--n", "3"]);
    assert_eq!(v["spectrum"]["classification"], json!("PN"));
    assert_eq!(v["uniformity"], json!(1));
    assert!(v["spectrum"].get("closed_form").is_none());
}

#[test]
fn cspectrum_examples() {
    let v = json_of(&["cspectrum", "--p", "7", "--n", "3"]);
    assert_eq!(
        v["c_spectrum"]["omega"],
        json!({"0": 192, "1": 1, "2": 129, "4": 21})
    );
    assert_eq!(v["c_spectrum"]["agreement"], json!(true));

    let v = json_of(&["cspectrum", "--p", "11", "--n", "3"]);
    assert_eq!(
        v["c_spectrum"]["omega"],
        json!({"0": 745, "2": 506, "3": 1, "4": 79})
    );

    let v = json_of(&["cspectrum", "--p", "11", "--n", "1", "--c", "3"]);
    assert_eq!(v["c_spectrum"]["bound"], json!(5));
    assert_eq!(v["c_spectrum"]["bound_ok"], json!(true));
    assert!(v["c_spectrum"].get("closed_form").is_none());
}

#[test]
fn c_accepts_both_element_encodings() {
    let a = json_of(&["cspectrum", "--p", "7", "--n", "2", "--c", "-1"]);
    let b = json_of(&["cspectrum", "--p", "7", "--n", "2", "--c", "6,0"]);
    assert_eq!(a, b);
    let (code, _) = run(&["cspectrum", "--p", "7", "--n", "2", "--c", "1,2,3"]);
    assert_eq!(code, 2);
}

#[test]
fn charsum_examples() {
    let v = json_of(&["charsum", "--p", "7", "--n", "1"]);
    assert_eq!(
        (v["lambda1"].clone(), v["lambda"].clone()),
        (json!(2), json!(0))
    );

    let v = json_of(&["charsum", "--p", "3", "--n", "3"]);
    assert_eq!(v["lambda"], json!(-20));

    let v = json_of(&["charsum", "--p", "11", "--n", "3", "--method", "both"]);
    assert_eq!(v["lambda1"], json!(-68));
    assert_eq!(v["char_sums"]["agreement"], json!(true));
    assert_eq!(v["char_sums"]["hasse_ok"], json!(true));

    let v = json_of(&["charsum", "--p", "11", "--n", "3", "--method", "recurrence"]);
    assert_eq!(v["lambda1"], json!(-68));
}

#[test]
fn verify_passes_and_rejects_bad_fields() {
    let v = json_of(&["verify", "--p", "11", "--n", "1"]);
    assert_eq!(v["passed"], json!(true));
    assert!(v["checks"].as_array().unwrap().len() > 20);

    let v = json_of(&["verify", "--p", "3", "--n", "5"]);
    assert_eq!(v["passed"], json!(true));

    let out = spectra()
        .args(["verify", "--p", "2", "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));

    let (code, _) = run(&["verify", "--p", "13"]);
    assert_eq!(code, 2);
}

#[test]
fn sweep_visits_fields_in_order() {
    let (code, stdout) = run(&["sweep", "--qmax", "30"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let qs: Vec<u64> = lines[..lines.len() - 1]
        .iter()
        .map(|v| v["q"].as_u64().unwrap())
        .collect();
    assert_eq!(qs, vec![7, 11, 19, 23, 27]);
    let summary = lines.last().unwrap();
    assert_eq!(summary["passed"], json!(true));
    assert_eq!(summary["fields"], json!(5));
}

#[test]
fn sweep_includes_the_example_fields() {
    let (code, stdout) = run(&["sweep", "--qmax", "400"]);
    assert_eq!(code, 0);
    let qs: Vec<u64> = stdout
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).unwrap()["q"].as_u64())
        .collect();
    assert!(qs.contains(&243) && qs.contains(&343));
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["spectrum", "--p", "3", "--n", "5"][..],
        &["cspectrum", "--p", "11", "--n", "1", "--c", "3"],
        &["charsum", "--p", "7", "--n", "3"],
        &["verify", "--p", "19"],
    ] {
        let (_, stdout) = run(args);
        let line = stdout.trim_end();
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        &["sweep", "--qmax", "200"][..],
        &["cspectrum", "--p", "3", "--n", "5"],
        &["charsum", "--p", "11", "--n", "3"],
    ] {
        let outputs: Vec<Vec<u8>> = ["1", "3"]
            .iter()
            .map(|t| {
                spectra()
                    .args(args)
                    .env("SPECTRA_THREADS", t)
                    .output()
                    .unwrap()
                    .stdout
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{args:?}");
        let flag = spectra()
            .args(args)
            .args(["--threads", "2"])
            .output()
            .unwrap();
        assert_eq!(flag.stdout, outputs[0]);
    }
}

#[test]
fn csv_and_text_formats() {
    let (code, stdout) = run(&["spectrum", "--p", "11", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("p,n,q,d,section,key,value,detail"));
    assert!(stdout.contains("11,1,11,4,spectrum,omega_3,2,brute-force"));
    assert!(stdout.lines().all(|l| l.split(',').count() >= 8));

    let (code, stdout) = run(&["spectrum", "--p", "11", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("w3=2"));
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        &["spectrum"][..],
        &["spectrum", "--p", "x"],
        &["spectrum", "--p", "9"],
        &["spectrum", "--p", "7", "--d", "0"],
        &["spectrum", "--p", "7", "--format", "yaml"],
        &["charsum", "--p", "7", "--method", "guess"],
        &["sweep", "--qmax", "5"],
        &["frobnicate"],
        &[],
    ] {
        let (code, _) = run(args);
        assert_eq!(code, 2, "{args:?}");
    }
    let (code, stdout) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("p,n,q,d,section,key,value,detail"));
}
