//! End-to-end runs of the binary: pinned outputs, exit codes, and the
//! print-then-reparse round trip.

use std::process::{Command, Output};

use ratwitt::{parse, Ring};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratwitt"))
        .args(args)
        .env_remove("RATWITT_PREC_DEFAULT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn teichmueller_product_is_exact() {
    let out = run(&["witt", "mul", "--ring", "ZZ", "1-2*T", "1-3*T"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1-6*T\n");
}

#[test]
fn reconstruction_prints_the_reduced_fraction() {
    let out = run(&["reconstruct", "--ring", "QQ", "--series", "1,1,2,4", "--bound", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(1-T)/(1-2*T)\n");
}

#[test]
fn omega_flags_hidden_witt_zeros() {
    let out = run(&["omega", "--ring", "Dual(GF/2)", "2*(e)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\nnote: Witt zero\n");
}

#[test]
fn ghost_components_and_env_default() {
    let out = run(&["ghost", "--ring", "QQ", "(1-2*T)*(1-3*T)", "--upto", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5,13,35,97\n");
    // Without --upto the count comes from RATWITT_PREC_DEFAULT.
    let out = Command::new(env!("CARGO_BIN_EXE_ratwitt"))
        .args(["ghost", "--ring", "ZZ", "1-2*T"])
        .env("RATWITT_PREC_DEFAULT", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "2,4,8\n");
}

#[test]
fn rank_and_membership_views_agree() {
    let out = run(&["hankel", "rank", "--ring", "QQ", "--input", "(1-T)/(1-2*T)"]);
    assert_eq!(stdout(&out), "2\n");
    let out = run(&["hankel", "rank", "--ring", "QQ", "--input", "1,1,2,4,8,16"]);
    assert_eq!(stdout(&out), "2\n");
    let yes = run(&["wj", "member", "--ring", "QQ", "--bound", "2", "--series", "1,1,2,4,8"]);
    assert_eq!(stdout(&yes), "true\n");
    let no = run(&["wj", "member", "--ring", "QQ", "--bound", "1", "--series", "1,1,2,4,8"]);
    assert_eq!(stdout(&no), "false\n");
}

#[test]
fn frobenius_and_verschiebung_stay_exact() {
    let out = run(&["witt", "frob", "--n", "2", "--ring", "ZZ", "1-5*T+6*T^2"]);
    assert_eq!(stdout(&out), "1-13*T+36*T^2\n");
    let out = run(&["witt", "versch", "--n", "3", "--ring", "ZZ", "(1-T)/(1-2*T)"]);
    assert_eq!(stdout(&out), "(1-T^3)/(1-2*T^3)\n");
}

#[test]
fn structured_format_emits_key_value_lines() {
    let out = run(&["witt", "mul", "--format", "structured", "--ring", "ZZ", "1-2*T", "1-3*T"]);
    assert_eq!(stdout(&out), "result = 1-6*T\n");
}

#[test]
fn printed_series_reparse_to_equal_values() {
    // Forcing a precision window exercises the `; prec=N` output form, which
    // must round-trip through the literal grammar.
    let out = run(&["witt", "add", "--ring", "Zmod/6", "1+T", "1+2*T", "--prec", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let r = Ring::integers_mod_u64(6).unwrap();
    let back = parse::parse_series(&r, text.trim()).unwrap();
    assert_eq!(back.precision(), 4);
    assert_eq!(r.render_elem(back.coeff(1)), "3");
    // And the exact form reparses as a rational Witt vector.
    let out = run(&["witt", "mul", "--ring", "QQ", "1-2*T", "1-3*T"]);
    let qq = Ring::rationals();
    let f = parse::parse_ratwitt(&qq, stdout(&out).trim()).unwrap();
    assert_eq!(f.render(), "1-6*T");
}

#[test]
fn fatou_and_descent_reports() {
    let out = run(&["fatou", "check", "--subring", "ZZ", "(1-3*T)"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("in_Wrat_A\n"));
    let out = run(&["descent", "check", "--base", "GF/2", "--ext", "GF/4", "1+T+T^2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "frobenius_fixed = true\ncoefficients_in_base = true\n");
    let out = run(&["descent", "check", "--base", "GF/2", "--ext", "GF/4", "1-x*T"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "frobenius_fixed = false\ncoefficients_in_base = false\n");
}

#[test]
fn char_map_of_a_triangular_matrix() {
    let out = run(&["almkvist", "char", "--ring", "ZZ", "--matrix", "[[2,7],[0,3]]"]);
    assert_eq!(stdout(&out), "1-5*T+6*T^2\n");
    let out = run(&["almkvist", "check", "--ring", "ZZ", "--matrix", "[[2,7],[0,3]]", "--split", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "pass\n");
}

#[test]
fn demo_names_cover_every_fixture() {
    let out = run(&["demo", "list"]);
    let names: Vec<&str> = ratwitt::fixtures::NAMES.to_vec();
    let listed: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(listed, names);
    let out = run(&["demo", "kronecker-round-trip"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn failures_exit_one_with_positioned_messages() {
    let out = run(&["witt", "mul", "--ring", "ZZ", "1-2*Q", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("parse error at byte 4"));

    let out = run(&["reconstruct", "--ring", "QQ", "--series", "1,1", "--bound", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("need 4 coefficients, have 2"));

    let out = run(&["witt", "mul", "--ring", "XX", "1", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["nonsense"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
