//! Worked-example CLI cases shared by the golden and acceptance tests.

use std::path::PathBuf;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
    /// Lines the transcript must contain, taken from the worked examples.
    pub expect: &'static [&'static str],
}

const H6: &str = "{[0,4],[2,5],[2,3],[2]}";
const H65: &str = "{[1,5],[2,4],[4,5]}";
const H8: &str = "{[0,3],[1,2],[1,4],[1,5],[2,3]}";
const H9: &str = "{[0,1],[1,4],[1,5],[1,6],[2,5],[3,4]}";
const H13: &str = "{[0,5],[3,8]}";

pub const CASES: &[Case] = &[
    Case { name: "remove_0_2", args: &["remove", "[0,2]", H6], code: 0, expect: &["resultant: {[2,3],[2,4],[2,5]}"] },
    Case { name: "remove_0_3", args: &["remove", "[0,3]", H6], code: 0, expect: &["resultant: {[2],[2,4],[2,5]}"] },
    Case { name: "remove_0_5", args: &["remove", "[0,5]", H6], code: 1, expect: &["not admissible"] },
    Case { name: "sequence_a1", args: &["remove", "[0,5]", "{[0,7],[1,4],[1,6]}"], code: 0, expect: &["sequence: [0,7],[1,6]"] },
    Case { name: "sequence_a2", args: &["remove", "[1,4]", "{[0,7],[1,4],[1,6]}"], code: 0, expect: &["sequence: [1,4]"] },
    Case { name: "sequence_b1", args: &["remove", "[0,5]", "{[0,7],[1,5],[1,6]}"], code: 0, expect: &["sequence: [0,7],[1,5]"] },
    Case { name: "sequence_b2", args: &["remove", "[1,4]", "{[0,7],[1,5],[1,6]}"], code: 0, expect: &["sequence: [1,5]"] },
    Case { name: "sequence_c1", args: &["remove", "[0,5]", "{[0,7],[1,5],[1,8]}"], code: 0, expect: &["sequence: [0,7],[1,5]"] },
    Case { name: "sequence_c2", args: &["remove", "[1,4]", "{[0,7],[1,5],[1,8]}"], code: 0, expect: &["sequence: [1,5]"] },
    Case { name: "resultant_1_3", args: &["resultant", "{[1,3]}", H65], code: 0, expect: &["{[2,5],[4],[4,5]}"] },
    Case { name: "resultant_2_3", args: &["resultant", "{[2,3]}", H65], code: 0, expect: &["{[1,5],[4],[4,5]}"] },
    Case { name: "resultant_1_3_2", args: &["resultant", "{[1,3],[2]}", H65], code: 0, expect: &["{[3,5],[4],[4,5]}"] },
    Case {
        name: "fine_chain",
        args: &["fine-chain", "{[1,3],[1,5],[2]}", H8],
        code: 0,
        expect: &["  s  = {[1,4],[1,5]}", "  tr = {[0,3],[1,2],[2,3],[2,4],[2,5]}", "  cp = {[2],[2,3],[2,5]}"],
    },
    Case {
        name: "minimizable",
        args: &["minimal", "{[1,3],[1,6],[2,4]}", H9, "--witness"],
        code: 0,
        expect: &["false", "witness: step=0 p=1 f(p)=[1,3] g(p)=[1,4] witness=[2,4]"],
    },
    Case { name: "not_minimizable", args: &["minimal", "{[1,3],[1,6],[2,5]}", H9], code: 0, expect: &["true"] },
    Case {
        name: "dagger_holds",
        args: &["dagger", "[0,5]", "[6,7]", "{[0,7],[3,6],[6,10]}", "--all-routes"],
        code: 0,
        expect: &["true", "sequence: true", "eta: true"],
    },
    Case {
        name: "dagger_fails",
        args: &["dagger", "[0,7]", "[6,8]", "{[0,8],[3,6],[6,10]}", "--all-routes"],
        code: 0,
        expect: &["false", "sequence: false", "eta: false"],
    },
    Case { name: "eta_3_6", args: &["eta", H13, "[3,6]"], code: 0, expect: &["(1,0,0,0)"] },
    Case { name: "eta_3_6_after", args: &["eta", "{[3,8],[4,5]}", "[3,6]"], code: 0, expect: &["(1,0,0,0)"] },
    Case { name: "eta_3_4", args: &["eta", H13, "[3,4]"], code: 0, expect: &["(1,0)"] },
    Case { name: "eta_3_4_after", args: &["eta", "{[3,8],[4,5]}", "[3,4]"], code: 0, expect: &["(1,1)"] },
    Case { name: "resultant_0_3_eta", args: &["resultant", "{[0,3]}", H13], code: 0, expect: &["{[3,8],[4,5]}"] },
    Case {
        name: "fiber",
        args: &["fiber", "{[0,3],[0,1],[1,2],[1,2],[2],[3]}", "{[0,1],[1,2],[2],[3]}"],
        code: 0,
        expect: &["{[0,2],[1,3]}", "{[0,3],[1],[2]}", "{[0,3],[1,2]}", "minimum: {[0,3],[1,2]}"],
    },
    Case {
        name: "minimize",
        args: &["minimize", "{[0,2],[1,3]}", "{[0,3],[0,1],[1,2],[1,2],[2],[3]}", "--moves"],
        code: 0,
        expect: &["{[0,3],[1,2]}"],
    },
    Case { name: "dual_forward", args: &["resultant", "{[2,4],[3]}", "{[2,8],[3,6]}"], code: 0, expect: &["{[4,8],[5,6]}"] },
    Case { name: "dual_back", args: &["dual", "{[4,8],[5,6]}", "{[2,8],[3,6]}"], code: 0, expect: &["{[2,4],[3]}"] },
    Case { name: "mxptb", args: &["mxptb", "{[1,5],[4,5],[3,6],[3],[0,2]}", "3"], code: 0, expect: &["{[1,3],[3]*2}"] },
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

/// Runs a case in-process; returns exit code and stdout.
pub fn run_case(case: &Case) -> (i32, String) {
    let mut argv = vec!["multiseg"];
    argv.extend_from_slice(case.args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = multiseg::cli::run(argv, &mut std::io::empty(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

/// The transcript stored on disk: the command line, then stdout, then the
/// exit code.
pub fn transcript(case: &Case, code: i32, stdout: &str) -> String {
    let quoted: Vec<String> = case.args.iter().map(|a| format!("'{a}'")).collect();
    format!("$ multiseg {}\n{stdout}[exit {code}]\n", quoted.join(" "))
}

pub fn expectations_hold(case: &Case, code: i32, stdout: &str) -> bool {
    code == case.code && case.expect.iter().all(|e| stdout.lines().any(|l| l == *e))
}
