use std::process::{Command, Output};

use serde_json::Value;

fn k3mirror(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3mirror"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn unit(n: usize, i: usize) -> String {
    (0..n)
        .map(|j| if i == j { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(",")
}

fn split_u_u_e8() -> String {
    let o = k3mirror(&[
        "mirror",
        "construct",
        "--lattice",
        "U+U+E8-",
        "--e",
        &unit(12, 2),
        "--eprime",
        &unit(12, 3),
        "--m",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn lattice_info_for_k3() {
    let o = k3mirror(&["lattice", "info", "--spec", "K3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"det":-1,"even":true,"rank":22,"signature":[3,19]}"#
    );
}

#[test]
fn hodge_numbers_for_five_two() {
    let o = k3mirror(&["bv", "hodge", "--n", "5", "--nprime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"euler":36,"h11":34,"h21":16}"#);
}

#[test]
fn phi_then_phi_inverse_returns_the_input() {
    let split = split_u_u_e8();
    let b = "1/2,0,0,0,1,0,-3,0,0,0,0,0";
    let omega = "1,3,0,0,0,0,0,0,0,0,0,0";
    let o = k3mirror(&[
        "mirror", "phi", "--split", &split, "--b", b, "--omega", omega,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let p = json_of(&o);
    assert_eq!(p["checks"]["isotropic"], Value::Bool(true));
    assert_eq!(p["checks"]["norm_matches"], Value::Bool(true));
    let back = k3mirror(&[
        "mirror",
        "phi-inverse",
        "--split",
        &split,
        "--re",
        &p["re"].to_string(),
        "--im",
        &p["im"].to_string(),
    ]);
    assert_eq!(back.status.code(), Some(0));
    let t = json_of(&back);
    let expect = |s: &str| -> Value {
        let parsed: Vec<Value> = s
            .split(',')
            .map(|x| {
                Value::String(if x.contains('/') {
                    x.to_string()
                } else {
                    format!("{x}/1")
                })
            })
            .collect();
        Value::Array(parsed)
    };
    assert_eq!(t["b"], expect(b));
    assert_eq!(t["omega"], expect(omega));
}

#[test]
fn domain_errors_exit_one_with_an_error_object() {
    let o = k3mirror(&["bv", "swap", "--n", "3", "--nprime", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["error"]["code"], "no_mirror_family");

    let split = split_u_u_e8();
    let o = k3mirror(&[
        "mirror",
        "phi",
        "--split",
        &split,
        "--b",
        &unit(12, 0),
        "--omega",
        "1,-1,0,0,0,0,0,0,0,0,0,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_of(&o)["error"]["code"], "not_in_tube");
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let o = k3mirror(&["census", "check", "--census", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--census"));

    let o = k3mirror(&["lattice", "info", "--spec", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--spec"));

    let o = k3mirror(&["bv", "hodge", "--n", "five", "--nprime", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--n"));

    let o = k3mirror(&["lattice", "frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_round_trips_through_dualize() {
    let fibers: Vec<String> = (0..24)
        .map(|i| {
            if i < 2 {
                r#"{"kodaira":"I1","fixed":true,"real":"circle_point"}"#.to_string()
            } else {
                r#"{"kodaira":"I1","fixed":false,"real":null}"#.to_string()
            }
        })
        .collect();
    let census = format!(r#"{{"n":2,"nprime":1,"fibers":[{}]}}"#, fibers.join(","));
    let o = k3mirror(&["census", "check", "--census", &census]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["total_euler"], 12);

    let d = k3mirror(&["census", "dualize", "--census", &census]);
    assert_eq!(d.status.code(), Some(0));
    let dual = stdout(&d);
    let o = k3mirror(&["census", "check", "--census", dual.trim()]);
    assert_eq!(json_of(&o)["total_euler"], -12);
    let dd = k3mirror(&["census", "dualize", "--census", dual.trim()]);
    let a: Value = serde_json::from_str(&census).unwrap();
    assert_eq!(json_of(&dd), a);
}

#[test]
fn inputs_can_come_from_files() {
    let dir = std::env::temp_dir().join(format!("k3mirror-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("split.json");
    std::fs::write(&path, split_u_u_e8()).unwrap();
    let arg = format!("@{}", path.display());
    let inline = k3mirror(&[
        "mirror",
        "phi",
        "--split",
        &split_u_u_e8(),
        "--b",
        &unit(12, 0),
        "--omega",
        "1,1,0,0,0,0,0,0,0,0,0,0",
    ]);
    let file = k3mirror(&[
        "mirror",
        "phi",
        "--split",
        &arg,
        "--b",
        &unit(12, 0),
        "--omega",
        "1,1,0,0,0,0,0,0,0,0,0,0",
    ]);
    assert_eq!(inline.stdout, file.stdout);
    let missing = k3mirror(&[
        "mirror",
        "phi",
        "--split",
        "@/nonexistent/split.json",
        "--b",
        "0",
        "--omega",
        "1",
    ]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_is_byte_stable() {
    let runs: Vec<Vec<u8>> = (0..3)
        .map(|_| k3mirror(&["leray", "bv", "--rank", "7"]).stdout)
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
    let split = split_u_u_e8();
    assert_eq!(split, split_u_u_e8());
    let t = json_of(&k3mirror(&["leray", "bv", "--rank", "7"]));
    assert_eq!(t["antidiagonal_sums"], t["betti"]);
}

#[test]
fn bv_period_leading_coefficient_is_one() {
    let mut rows = [unit(22, 0), unit(22, 1)];
    rows.iter_mut().for_each(|r| *r = format!("[{r}]"));
    let pol = format!("[{}]", rows.join(","));
    let o = k3mirror(&[
        "mirror",
        "construct",
        "--lattice",
        "K3",
        "--polarization",
        &pol,
        "--e",
        &unit(22, 2),
        "--eprime",
        &unit(22, 3),
        "--m",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let split = stdout(&o);
    let o = k3mirror(&[
        "leray",
        "bv-period",
        "--split",
        &split,
        "--b1",
        "1/3,0",
        "--omega1",
        "1,2",
        "--b2",
        "-1/2",
        "--omega2",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["components"]["E'⊗s_x"]["re"], "1/1");
    assert_eq!(v["components"]["E'⊗s_x"]["im"], "0/1");
    assert_eq!(v["in_domains"], Value::Bool(true));
}

#[test]
fn verify_all_reports_every_check() {
    let o = k3mirror(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 11);
    assert_eq!(v["all_passed"], Value::Bool(true));
}
