use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use ietwords::fz::{fz_check, search_orders, OrderPair};
use ietwords::iet::{
    coding_with_sets, natural_coding_word, parse_config, render_config, IetConfig,
};
use ietwords::rauzy::{build_k_graph, strongly_connected, validate_evolution, EvolutionReport};
use ietwords::reconstruct::{reconstruct_iet, verify_roundtrip};
use ietwords::words::{bispecial_factors, recurrence_window, special_factors, FactorSet, Side};
use ietwords::{parse_scalar, ExactScalar, Word};

use crate::{AnalyzeArgs, FzArgs, GenArgs, RauzyArgs, ReconstructArgs, ValidateArgs};

pub const SUCCESS: u8 = 0;
pub const FAILURE: u8 = 1;
pub const INCONCLUSIVE: u8 = 2;
pub const USAGE: u8 = 3;

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Word files hold one line of letters; the alphabet is the letters present.
fn read_word(path: &Path) -> Result<Word> {
    let text = read_text(path)?;
    let line = text.trim_end_matches(['\n', '\r']);
    if line.contains('\n') {
        bail!("{}: word files hold a single line", path.display());
    }
    Word::parse(line).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_config(path: &Path) -> Result<IetConfig> {
    parse_config(&read_text(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Builds config text from the inline flags so they get the same checks and
/// diagnostics as a file.
fn inline_config(a: &GenArgs) -> Result<IetConfig> {
    if a.lengths.is_empty() {
        bail!("give --config, or --lengths with --perm");
    }
    let mut text = format!("k {}\n", a.lengths.len());
    if let Some(d) = a.d {
        writeln!(text, "d {d}")?;
    }
    writeln!(text, "lengths {}", a.lengths.join(" "))?;
    let perm: Vec<String> = a.perm.iter().map(|p| p.to_string()).collect();
    writeln!(text, "perm {}", perm.join(" "))?;
    if !a.flips.is_empty() {
        let flips: Vec<String> = a.flips.iter().map(|f| f.to_string()).collect();
        writeln!(text, "flips {}", flips.join(" "))?;
    }
    parse_config(&text).map_err(|e| anyhow!("inline flags: {}", e.message))
}

pub fn gen(a: GenArgs) -> Result<u8> {
    let mut cfg = match &a.config {
        Some(path) => load_config(path)?,
        None => inline_config(&a)?,
    };
    if let Some(x) = &a.x0 {
        cfg.x0 = parse_scalar(x).map_err(|e| anyhow!("--x0: {e}"))?;
    }
    let word = match &cfg.sets {
        Some(sets) => coding_with_sets(&cfg.spec, sets, &cfg.x0, a.length)?,
        None => natural_coding_word(&cfg.spec, &cfg.letters, &cfg.x0, a.length)?,
    };
    write_text(&a.output, &format!("{word}\n"))?;
    Ok(SUCCESS)
}

pub fn analyze(a: AnalyzeArgs) -> Result<u8> {
    let word = read_word(&a.word)?;
    if a.max_n == 0 || a.max_n + 1 > word.len() {
        bail!(
            "--max-n must be between 1 and {}",
            word.len().saturating_sub(1)
        );
    }
    let fs = FactorSet::new(&word, a.max_n + 1)?;
    let mut csv = String::from("n,T(n),#left-special,#right-special,#bispecial\n");
    for n in 1..=a.max_n {
        writeln!(
            csv,
            "{n},{},{},{},{}",
            fs.complexity(n)?,
            special_factors(&fs, n, Side::Left)?.len(),
            special_factors(&fs, n, Side::Right)?.len(),
            bispecial_factors(&fs, n)?.len()
        )?;
    }
    match &a.output {
        Some(path) => write_text(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(SUCCESS)
}

fn check_window(word: &Word, k_min: usize, k_max: usize) -> Result<()> {
    if k_min == 0 || k_min > k_max {
        bail!("window [{k_min}, {k_max}] must satisfy 1 <= k-min <= k-max");
    }
    if k_max + 2 > word.len() {
        bail!(
            "window up to {k_max} needs a word of length at least {}",
            k_max + 2
        );
    }
    Ok(())
}

pub fn rauzy(a: RauzyArgs) -> Result<u8> {
    let word = read_word(&a.word)?;
    check_window(&word, a.k_min, a.k_max)?;
    let fs = FactorSet::new(&word, a.k_max + 2)?;
    fs::create_dir_all(&a.dot).with_context(|| format!("cannot create {}", a.dot.display()))?;
    let report = if a.labeled {
        let r = validate_evolution(&fs, 1, a.k_max, !a.non_oriented)?;
        println!("{}", r.machine_line());
        Some(r)
    } else {
        None
    };
    let labeling = report.as_ref().and_then(|r| r.labeling.as_ref());
    println!("k,vertices,arcs,strongly_connected,file");
    for k in a.k_min..=a.k_max {
        let g = build_k_graph(&fs, k)?;
        let dot = match labeling {
            Some(l) if k >= l.base => l.at_level(&fs, k)?.export_dot(),
            _ => g.export_dot(),
        };
        let name = format!("rauzy_k{k}.dot");
        write_text(&a.dot.join(&name), &dot)?;
        println!(
            "{k},{},{},{},{name}",
            g.vertices().len(),
            g.arcs().len(),
            strongly_connected(&g)
        );
    }
    Ok(match report {
        Some(r) if !r.is_accepted() => FAILURE,
        _ => SUCCESS,
    })
}

fn describe_report(r: &EvolutionReport, fs: &FactorSet, verbose: bool) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "window: [{}, {}]", r.window.0, r.window.1)?;
    writeln!(
        out,
        "mode: {}",
        if r.oriented {
            "oriented"
        } else {
            "non-oriented"
        }
    )?;
    writeln!(out, "verdict: {}", r.verdict)?;
    match r.k_start {
        Some(k) => writeln!(out, "accepted from order: {k}")?,
        None => writeln!(out, "accepted from order: none")?,
    }
    if let Some(w) = &r.witness {
        writeln!(out, "witness: {w}")?;
        writeln!(out, "witness re-verified: {}", w.verify(fs))?;
    }
    if verbose {
        if let Some(l) = &r.labeling {
            writeln!(out, "labeling base order: {}", l.base)?;
            for (u, label) in &l.in_crotches {
                writeln!(out, "  in-crotch {u}: {label}")?;
            }
            for (s, label) in &l.out_crotches {
                writeln!(out, "  out-crotch {s}: {label}")?;
            }
            for v in &l.marks {
                writeln!(out, "  marked {v}")?;
            }
        }
    }
    writeln!(out, "{}", r.machine_line())?;
    Ok(out)
}

pub fn validate(a: ValidateArgs) -> Result<u8> {
    let word = read_word(&a.word)?;
    if a.k_min == 0 || a.k_min > a.k_max {
        bail!(
            "window [{}, {}] must satisfy 1 <= k-min <= k-max",
            a.k_min,
            a.k_max
        );
    }
    // every factor of the top length must recur inside the prefix for the
    // graphs up to k_max + 1 to be evidence
    let recurrent = a.k_max + 2 <= word.len() && recurrence_window(&word, a.k_max + 1).is_some();
    let (text, code) = if recurrent {
        let fs = FactorSet::new(&word, a.k_max + 2)?;
        let r = validate_evolution(&fs, a.k_min, a.k_max, !a.non_oriented)?;
        let code = if r.is_accepted() { SUCCESS } else { FAILURE };
        (describe_report(&r, &fs, a.verbose)?, code)
    } else {
        let text = format!(
            "window: [{}, {}]\nverdict: inconclusive (a prefix of {} letters does not show every factor of length {} recurring)\nverdict=inconclusive;K=none;witness=none\n",
            a.k_min,
            a.k_max,
            word.len(),
            a.k_max + 1
        );
        (text, INCONCLUSIVE)
    };
    print!("{text}");
    if let Some(path) = &a.output {
        write_text(path, &text)?;
    }
    Ok(code)
}

pub fn fz(a: FzArgs) -> Result<u8> {
    let word = read_word(&a.word)?;
    if a.max_len + 2 > word.len() {
        bail!(
            "--max-len {} needs a word of length at least {}",
            a.max_len,
            a.max_len + 2
        );
    }
    let fs = FactorSet::new(&word, a.max_len + 2)?;
    let mut out = String::new();
    let code = if a.search {
        let found = search_orders(&fs, a.max_len)?;
        writeln!(out, "pi0,pi1")?;
        for p in &found {
            let p0: String = p.pi0().iter().collect();
            let p1: String = p.pi1().iter().collect();
            writeln!(out, "{p0},{p1}")?;
        }
        writeln!(
            out,
            "# {} order pairs pass up to length {}",
            found.len(),
            a.max_len
        )?;
        if found.is_empty() {
            FAILURE
        } else {
            SUCCESS
        }
    } else {
        let orders = OrderPair::parse(&a.orders[0], &a.orders[1])?;
        let report = fz_check(&fs, &orders, a.max_len)?;
        out.push_str(&report.table());
        let verdict = if report.passed() {
            "consistent with the conditions"
        } else {
            "fails"
        };
        writeln!(out, "# {orders} {verdict} up to length {}", a.max_len)?;
        if report.passed() {
            SUCCESS
        } else {
            FAILURE
        }
    };
    match &a.output {
        Some(path) => write_text(path, &out)?,
        None => print!("{out}"),
    }
    Ok(code)
}

pub fn reconstruct(a: ReconstructArgs) -> Result<u8> {
    let word = read_word(&a.word)?;
    check_window(&word, a.k_min, a.k_max)?;
    let fs = FactorSet::new(&word, a.k_max + 2)?;
    let report = validate_evolution(&fs, a.k_min, a.k_max, !a.non_oriented)?;
    println!("{}", report.machine_line());
    if !report.is_accepted() {
        eprintln!("the word is rejected; no candidate is built");
        return Ok(FAILURE);
    }
    let candidate = reconstruct_iet(&word, &report, a.depth)?;
    let n = a.roundtrip.min(word.len());
    let rt = verify_roundtrip(&word, &candidate.spec, &candidate.letters, n)?;
    write_text(
        &a.config_out,
        &render_config(&candidate.config(rt.x0.clone())),
    )?;
    let residual = ExactScalar::from_rational(candidate.residual.clone());
    let csv = format!(
        "residual,residual_approx,match_length,total,admissible\n{},{},{},{},{}\n",
        candidate.residual,
        residual.approximate(6),
        rt.match_length,
        rt.total,
        rt.admissible
    );
    write_text(&a.report_out, &csv)?;
    print!("{csv}");
    Ok(SUCCESS)
}
