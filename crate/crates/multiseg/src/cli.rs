//! Command-line front end.
//!
//! Exit codes: 0 success, 1 absent resultant or failed check, 2 usage or
//! parse error. `-` in place of a literal reads that argument from stdin.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::duality::{batch_duality, dual_remove, BulletTally};
use crate::error::Error;
use crate::hd_classes::{hd_ess_speh, hd_generic, hd_ladder, hd_speh_product, realize};
use crate::minimality::{
    dagger, dagger_by_eta, dagger_by_sequence, epsilon, eta, first_minimizable_step, minimize, mxpt_b,
};
use crate::multiseg::Multisegment;
use crate::oracle::{self, UniverseSpec};
use crate::removal::{fine_chain, remove_multi, removal_sequence, tr_cp};
use crate::render::{removed_marks, render};
use crate::segment::Segment;
use crate::suite;
use crate::text::{format_speh_list, parse_multisegment, parse_segment, parse_speh, parse_speh_list};

#[derive(Parser, Debug)]
#[command(name = "multiseg", version, about = "Multisegment removal, minimality and duality calculator")]
struct Cli {
    /// Print structured JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the removal process for one segment and show its trace.
    Remove { segment: String, h: String },
    /// r(n, h) for a multisegment n.
    Resultant { n: String, h: String },
    /// Removal segments, truncation and compaction at every step.
    FineChain { n: String, h: String },
    /// Whether n is minimal to h.
    Minimal {
        n: String,
        h: String,
        /// Also print the first minimizability witness.
        #[arg(long)]
        witness: bool,
    },
    /// The minimal element of the fiber of r(., h) through n.
    Minimize {
        n: String,
        h: String,
        /// Also print the intersection-union moves taken.
        #[arg(long)]
        moves: bool,
    },
    /// eps_D(h).
    Epsilon { h: String, segment: String },
    /// eta_D(h).
    Eta { h: String, segment: String },
    /// The (dagger) property of (D, D', h).
    Dagger {
        segment: String,
        other: String,
        h: String,
        /// Evaluate all three criteria.
        #[arg(long)]
        all_routes: bool,
    },
    /// Highest derivative multisegment for a solved class.
    Hd {
        #[arg(long, value_enum)]
        class: HdClass,
        arg: String,
    },
    /// Essentially Speh factors realizing h, as (top,d,m) triples.
    Realize { h: String },
    /// The dual removal r^d(n, h).
    Dual { n: String, h: String },
    /// Sum of [a,c] over entries [a,b] of h containing c.
    Mxptb { h: String, c: i32 },
    /// Dot-row diagram of h, optionally marking a removal.
    Render {
        h: String,
        #[arg(long = "remove")]
        remove: Option<String>,
    },
    /// Every n in a bounded universe with r(n, h) = p, and its minimum.
    Fiber {
        h: String,
        p: String,
        #[command(flatten)]
        universe: UniverseArgs,
    },
    /// Exhaustive checks: an id, `all`, `list` or `duality`.
    Check {
        target: String,
        #[command(flatten)]
        universe: UniverseArgs,
        /// Write the full JSON report to this file.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
        /// Counterexamples listed per check.
        #[arg(long, default_value_t = 5)]
        max_listed: usize,
        /// Stamp the report file with the generation time.
        #[arg(long)]
        timestamps: bool,
    },
}

#[derive(clap::Args, Debug)]
struct UniverseArgs {
    /// Endpoint window as A..B.
    #[arg(long)]
    window: Option<String>,
    #[arg(long = "max-segs")]
    max_segs: Option<usize>,
    #[arg(long = "max-mult")]
    max_mult: Option<usize>,
}

impl UniverseArgs {
    fn resolve(&self, default: UniverseSpec) -> Result<UniverseSpec, Error> {
        let mut u = default;
        if let Some(w) = &self.window {
            u.window = parse_window(w)?;
        }
        if let Some(k) = self.max_segs {
            u.max_segments = k;
        }
        if let Some(m) = self.max_mult {
            u.max_multiplicity = m;
        }
        Ok(u)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HdClass {
    Generic,
    Ladder,
    Speh,
    Product,
}

fn parse_window(s: &str) -> Result<(i32, i32), Error> {
    let bad = || Error::Parse { pos: 0, msg: format!("expected a window A..B, got `{s}`") };
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i32 = a.trim().parse().map_err(|_| bad())?;
    let b: i32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Outcome of a command: text for stdout and an exit code.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    cached: Option<String>,
}

impl Inputs<'_> {
    fn text(&mut self, arg: &str) -> Result<String, Error> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.cached.is_none() {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse { pos: 0, msg: format!("cannot read stdin: {e}") })?;
            self.cached = Some(s.trim().to_string());
        } else {
            return Err(Error::Parse { pos: 0, msg: "only one argument can be read from stdin".into() });
        }
        Ok(self.cached.clone().unwrap())
    }

    fn multi(&mut self, arg: &str) -> Result<Multisegment, Error> {
        parse_multisegment(&self.text(arg)?)
    }

    fn seg(&mut self, arg: &str) -> Result<Segment, Error> {
        parse_segment(&self.text(arg)?)
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut inputs = Inputs { stdin, cached: None };
    match dispatch(&cli, &mut inputs) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(Error::NotAdmissible) => {
            let text = if cli.json {
                format!("{}\n", json!({ "error": "not admissible" }))
            } else {
                "not admissible\n".to_string()
            };
            let _ = out.write_all(text.as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let mut lock = stdin.lock();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut lock, &mut stdout.lock(), &mut stderr.lock())
}

fn line(v: Value, json: bool, text: impl FnOnce() -> String) -> Output {
    if json {
        Output::ok(format!("{v}\n"))
    } else {
        Output::ok(text())
    }
}

fn opt_seg(s: &Option<Segment>) -> String {
    s.map_or("empty".to_string(), |s| s.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn dispatch(cli: &Cli, inp: &mut Inputs) -> Result<Output, Error> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Remove { segment, h } => {
            let d = inp.seg(segment)?;
            let h = inp.multi(h)?;
            let t = removal_sequence(&d, &h).ok_or(Error::NotAdmissible)?;
            let tr: Vec<String> = t.truncations.iter().map(opt_seg).collect();
            Ok(line(serde_json::to_value(&t).unwrap(), json, || {
                format!("sequence: {}\ntruncations: {}\nresultant: {}\n", join(&t.sequence), tr.join(","), t.resultant)
            }))
        }
        Cmd::Resultant { n, h } => {
            let n = inp.multi(n)?;
            let h = inp.multi(h)?;
            let r = remove_multi(&n, &h).ok_or(Error::NotAdmissible)?;
            Ok(line(json!({ "resultant": r }), json, || format!("{r}\n")))
        }
        Cmd::FineChain { n, h } => {
            let n = inp.multi(n)?;
            let h = inp.multi(h)?;
            let chain = fine_chain(&n, &h);
            let mut text = String::new();
            let mut steps = Vec::new();
            for (i, st) in chain.steps.iter().enumerate() {
                let _ = writeln!(text, "step {i}");
                let _ = writeln!(text, "  n  = {}", st.n);
                let _ = writeln!(text, "  h  = {}", st.h);
                match &st.removal_segments {
                    Some(s) => {
                        let (tr, cp) = tr_cp(&st.n, &st.h)?;
                        let _ = writeln!(text, "  s  = {s}");
                        let _ = writeln!(text, "  tr = {tr}");
                        let _ = writeln!(text, "  cp = {cp}");
                        steps.push(json!({ "n": st.n, "h": st.h, "s": s, "tr": tr, "cp": cp }));
                    }
                    None => {
                        let _ = writeln!(text, "  s  = not admissible");
                        steps.push(json!({ "n": st.n, "h": st.h, "s": Value::Null }));
                    }
                }
            }
            let code = if chain.is_complete() { 0 } else { 1 };
            let v = json!({ "steps": steps, "complete": chain.is_complete() });
            let mut o = line(v, json, || text);
            o.code = code;
            Ok(o)
        }
        Cmd::Minimal { n, h, witness } => {
            let n = inp.multi(n)?;
            let h = inp.multi(h)?;
            let w = first_minimizable_step(&n, &h)?;
            let v = json!({ "minimal": w.is_none(), "witness": w });
            Ok(line(v, json, || {
                let mut s = format!("{}\n", w.is_none());
                if *witness {
                    if let Some(w) = &w {
                        let _ = writeln!(s, "witness: {w}");
                    }
                }
                s
            }))
        }
        Cmd::Minimize { n, h, moves } => {
            let n = inp.multi(n)?;
            let h = inp.multi(h)?;
            let (m, taken) = minimize(&n, &h)?;
            let v = json!({ "minimal": m, "moves": taken });
            Ok(line(v, json, || {
                let mut s = String::new();
                if *moves {
                    for mv in &taken {
                        let _ = writeln!(s, "iu {} {} -> {}", mv.pair.0, mv.pair.1, mv.result);
                    }
                }
                let _ = writeln!(s, "{m}");
                s
            }))
        }
        Cmd::Epsilon { h, segment } => {
            let h = inp.multi(h)?;
            let d = inp.seg(segment)?;
            let e = epsilon(&h, &d);
            Ok(line(json!({ "epsilon": e }), json, || format!("{e}\n")))
        }
        Cmd::Eta { h, segment } => {
            let h = inp.multi(h)?;
            let d = inp.seg(segment)?;
            let e = eta(&h, &d);
            Ok(line(json!({ "eta": e.values }), json, || format!("{e}\n")))
        }
        Cmd::Dagger { segment, other, h, all_routes } => {
            let d = inp.seg(segment)?;
            let dp = inp.seg(other)?;
            let h = inp.multi(h)?;
            let main = dagger(&d, &dp, &h)?;
            if *all_routes {
                let seq = dagger_by_sequence(&d, &dp, &h)?;
                let via_eta = dagger_by_eta(&d, &dp, &h)?;
                let v = json!({ "dagger": main, "witness": main, "sequence": seq, "eta": via_eta });
                Ok(line(v, json, || format!("{main}\nwitness: {main}\nsequence: {seq}\neta: {via_eta}\n")))
            } else {
                Ok(line(json!({ "dagger": main }), json, || format!("{main}\n")))
            }
        }
        Cmd::Hd { class, arg } => {
            let text = inp.text(arg)?;
            let hd = match class {
                HdClass::Generic => hd_generic(&parse_multisegment(&text)?)?,
                HdClass::Ladder => hd_ladder(&parse_multisegment(&text)?)?,
                HdClass::Speh => Multisegment::from_segments([hd_ess_speh(&parse_speh(&text)?)]),
                HdClass::Product => hd_speh_product(&parse_speh_list(&text)?)?,
            };
            Ok(line(json!({ "hd": hd }), json, || format!("{hd}\n")))
        }
        Cmd::Realize { h } => {
            let h = inp.multi(h)?;
            let ps = realize(&h)?;
            Ok(line(json!({ "factors": ps }), json, || format!("{}\n", format_speh_list(&ps))))
        }
        Cmd::Dual { n, h } => {
            let n = inp.multi(n)?;
            let h = inp.multi(h)?;
            let r = dual_remove(&n, &h).ok_or(Error::NotAdmissible)?;
            Ok(line(json!({ "dual_resultant": r }), json, || format!("{r}\n")))
        }
        Cmd::Mxptb { h, c } => {
            let h = inp.multi(h)?;
            let m = mxpt_b(&h, *c);
            Ok(line(json!({ "mxptb": m }), json, || format!("{m}\n")))
        }
        Cmd::Render { h, remove } => {
            let h = inp.multi(h)?;
            let marks = match remove {
                Some(s) => {
                    let d = inp.seg(s)?;
                    let t = removal_sequence(&d, &h).ok_or(Error::NotAdmissible)?;
                    removed_marks(&h, &t)
                }
                None => Default::default(),
            };
            let pic = render(&h, &marks);
            let pts: Vec<(String, i32)> = marks.iter().map(|(i, p)| (h.entries()[*i].to_string(), *p)).collect();
            Ok(line(json!({ "diagram": pic, "removed": pts }), json, || pic.clone()))
        }
        Cmd::Fiber { h, p, universe } => {
            let h = inp.multi(h)?;
            let p = inp.multi(p)?;
            let default = UniverseSpec::new(
                (h.min_start().unwrap_or(0), h.max_end().unwrap_or(0)),
                UniverseSpec::desk().max_segments,
                usize::MAX,
            );
            let u = universe.resolve(default)?;
            let members: Vec<Multisegment> = oracle::fiber(&h, &p, &u).into_iter().collect();
            let minimum = members
                .iter()
                .filter(|x| members.iter().all(|y| y == *x || !y.leq_z(x)))
                .cloned()
                .collect::<Vec<_>>();
            let v = json!({ "members": members, "minimal": minimum });
            let mut o = line(v, json, || {
                let mut s = String::new();
                for m in &members {
                    let _ = writeln!(s, "{m}");
                }
                let list: Vec<String> = minimum.iter().map(|m| m.to_string()).collect();
                let _ = writeln!(s, "minimum: {}", if list.is_empty() { "none".to_string() } else { list.join(" ") });
                s
            });
            if members.is_empty() {
                o.code = 1;
            }
            Ok(o)
        }
        Cmd::Check { target, universe, report, max_listed, timestamps } => {
            let report = report.as_deref().map(|p| (p, *timestamps));
            run_check(target, universe, report, *max_listed, json)
        }
    }
}

/// Report file target and whether to stamp it.
type ReportTarget<'a> = Option<(&'a std::path::Path, bool)>;

fn write_report(target: ReportTarget, v: &impl serde::Serialize) -> Result<(), Error> {
    if let Some((p, stamp)) = target {
        let mut v = serde_json::to_value(v).unwrap();
        if stamp {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            v["generated_unix"] = json!(secs);
        }
        let body = serde_json::to_string_pretty(&v).unwrap();
        std::fs::write(p, body + "\n")
            .map_err(|e| Error::precondition(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn tally(t: &BulletTally) -> String {
    format!("pass={} fail={} undefined={}", t.pass, t.fail, t.undefined)
}

fn run_check(
    target: &str,
    universe: &UniverseArgs,
    report: ReportTarget,
    max_listed: usize,
    json: bool,
) -> Result<Output, Error> {
    match target {
        "list" => {
            let items: Vec<Value> = suite::registry()
                .iter()
                .map(|c| json!({ "id": c.id, "statement": c.statement, "conjecture": c.conjecture }))
                .collect();
            Ok(line(json!(items), json, || {
                let w = suite::registry().iter().map(|c| c.id.len()).max().unwrap_or(0);
                let mut s = String::new();
                for c in suite::registry() {
                    let tag = if c.conjecture { " (conjecture)" } else { "" };
                    let _ = writeln!(s, "{:<w$}  {}{tag}", c.id, c.statement);
                }
                let _ = writeln!(s, "{:<w$}  round-trip expectations for the dual removal (report only)", "duality");
                s
            }))
        }
        "duality" => {
            let u = universe.resolve(UniverseSpec::reduced())?;
            let b = batch_duality(&u, max_listed);
            write_report(report, &b)?;
            Ok(line(serde_json::to_value(&b).unwrap(), json, || {
                let mut s = format!(
                    "duality over window {}..{}, at most {} segments, multiplicity at most {}: {} instances\n",
                    u.window.0, u.window.1, u.max_segments, u.max_multiplicity, b.instances
                );
                for i in 0..3 {
                    let _ = writeln!(s, "bullet{}: {}", i + 1, tally(&b.bullets[i]));
                }
                for i in 0..3 {
                    let _ = writeln!(s, "bullet{} (unlinked h): {}", i + 1, tally(&b.unlinked_h[i]));
                }
                for rep in &b.counterexamples {
                    let st: Vec<String> = rep.bullets().iter().map(|x| format!("{x:?}").to_lowercase()).collect();
                    let _ = writeln!(s, "  n={} h={} [{}]", rep.n, rep.h, st.join(","));
                    for d in &rep.details {
                        let _ = writeln!(s, "    {d}");
                    }
                }
                s
            }))
        }
        _ => {
            let u = universe.resolve(UniverseSpec::desk())?;
            let ids: Vec<&str> = if target == "all" { Vec::new() } else { vec![target] };
            let rep = suite::run(&ids, &u, max_listed)?;
            write_report(report, &rep)?;
            let code = if rep.passed() { 0 } else { 1 };
            let mut o = line(serde_json::to_value(&rep).unwrap(), json, || {
                let mut s = String::new();
                let w = rep.results.iter().map(|r| r.id.len()).max().unwrap_or(0);
                for r in &rep.results {
                    let tag = match (r.conjecture, r.passed()) {
                        (false, true) => "PASS",
                        (false, false) => "FAIL",
                        (true, true) => "HOLDS",
                        (true, false) => "REFUTED",
                    };
                    let _ = writeln!(s, "{tag:<7} {:<w$} instances={} failures={}", r.id, r.instances, r.failures);
                    for c in &r.counterexamples {
                        let _ = writeln!(s, "        {c}");
                    }
                }
                let failed = rep.results.iter().filter(|r| !r.conjecture && !r.passed()).count();
                if failed == 0 {
                    s.push_str("all checks passed\n");
                } else {
                    let _ = writeln!(s, "{failed} checks failed");
                }
                s
            });
            o.code = code;
            Ok(o)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["multiseg"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn resultant_and_stdin() {
        assert_eq!(run_str(&["resultant", "{[2,4],[3]}", "{[2,8],[3,6]}"], ""), (0, "{[4,8],[5,6]}\n".into(), String::new()));
        assert_eq!(run_str(&["resultant", "{[2,4],[3]}", "-"], "{[2,8],[3,6]}\n"), (0, "{[4,8],[5,6]}\n".into(), String::new()));
    }

    #[test]
    fn exit_codes() {
        let (code, out, _) = run_str(&["remove", "[0,5]", "{[0,4],[2,5],[2,3],[2]}"], "");
        assert_eq!((code, out.as_str()), (1, "not admissible\n"));
        let (code, _, err) = run_str(&["resultant", "{[3,1]}", "{}"], "");
        assert_eq!(code, 2);
        assert!(err.contains("position"));
        assert_eq!(run_str(&["frobnicate"], "").0, 2);
    }

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("0..5").unwrap(), (0, 5));
        assert_eq!(parse_window("-2..3").unwrap(), (-2, 3));
        assert!(parse_window("5..0").is_err());
        assert!(parse_window("05").is_err());
    }
}
