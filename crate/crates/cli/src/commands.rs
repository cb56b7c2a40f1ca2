use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Result};
use permclass::class::Levels;
use permclass::dfa::infer_dfa;
use permclass::families::twin_basis_element;
use permclass::landmarks::default_horizon;
use permclass::periodic::basis_from_levels;
use permclass::structure::growing_block_nonexample;
use permclass::{
    atomicity_check, classify as classify_pi, decode as decode_word, encode as encode_perm,
    landmarks as find_landmarks, rational_gf, LevelSource, Perm, PiSource, RankWord, Verdict,
};
use serde_json::{json, Number, Value};

use crate::input::{load_class, load_pi};
use crate::output::Progress;
use crate::Source;

pub struct Output {
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub table: String,
}

impl Output {
    fn new(payload: Value, table: String) -> Self {
        Output { payload, diagnostics: Vec::new(), table }
    }

    fn note(mut self, d: impl Into<String>) -> Self {
        self.diagnostics.push(d.into());
        self
    }
}

fn perms_line(items: &[Perm]) -> String {
    items.iter().map(Perm::to_string).collect::<Vec<_>>().join(", ")
}

fn big(n: impl ToString) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

const EMPIRICAL: &str = "prefix-empirical: computed from the given finite prefix only";

pub fn enumerate(path: &Path, max_n: usize, members: bool, progress: &Progress) -> Result<Output> {
    let class = load_class(path)?;
    let mut counts = Vec::new();
    let mut listed = Vec::new();
    for (n, level) in Levels::new(&class).take(max_n + 1).enumerate() {
        progress.note(format!("length {n}: {} members", level.len()));
        counts.push(level.len());
        if members {
            listed.push(level);
        }
    }
    let mut table = String::from("n\tcount\n");
    for (n, c) in counts.iter().enumerate() {
        writeln!(table, "{n}\t{c}")?;
    }
    let mut payload = json!({ "basis": class.basis(), "max_n": max_n, "counts": counts });
    if members {
        payload["members"] = json!(listed);
    }
    Ok(Output::new(payload, table))
}

pub fn basis(path: &Path, max_n: usize, progress: &Progress) -> Result<Output> {
    let pi = load_pi(path)?;
    progress.note(format!("enumerating patterns of pi up to length {max_n}"));
    let set = pi.sub_levels(max_n)?;
    let basis = basis_from_levels(&set.levels);
    let table = format!("basis elements up to length {max_n}: {}\n", perms_line(&basis));
    let out = Output::new(
        json!({ "pi": pi, "max_n": max_n, "basis": basis, "window": set.window, "stabilized": set.stabilized }),
        table,
    );
    Ok(if set.stabilized { out } else { out.note(EMPIRICAL) })
}

pub fn gf(source: &Source, train_len: usize, progress: &Progress) -> Result<Output> {
    let (described, levels): (Value, Box<dyn LevelSource>) = match (&source.class, &source.pi) {
        (Some(c), _) => {
            let class = load_class(c)?;
            (json!({ "class": class }), Box::new(class))
        }
        (None, Some(p)) => {
            let pi = load_pi(p)?;
            (json!({ "pi": pi }), Box::new(pi))
        }
        (None, None) => bail!("one of --class or --pi is required"),
    };
    progress.note(format!("inferring an automaton from members of length <= {}", train_len + 1));
    let dfa = infer_dfa(levels.as_ref(), train_len)?;
    let gf = rational_gf(&dfa);
    let counts: Vec<Value> = dfa.count_profile(train_len + 3).into_iter().map(big).collect();
    let table =
        format!("alphabet: 1..={}\nlive states: {}\ngenerating function: {gf}\n", dfa.alphabet, dfa.live_states());
    let mut payload = json!({
        "train_len": train_len,
        "alphabet": dfa.alphabet,
        "dfa": dfa,
        "gf": gf,
        "counts": counts,
    });
    payload["source"] = described;
    Ok(Output::new(payload, table))
}

pub fn atomic(path: &Path, pair_len: usize, witness_len: Option<usize>) -> Result<Output> {
    let class = load_class(path)?;
    let witness_len = witness_len.unwrap_or(2 * pair_len);
    let report = atomicity_check(&class, pair_len, witness_len);
    let mut table = String::new();
    match &report.verdict {
        Verdict::RefutedCertified => {
            let (a, b) = report.witness_pair.as_ref().unwrap();
            let (y, z) = report.decomposition.as_ref().unwrap();
            writeln!(table, "not atomic: {a} and {b} have no common superpattern in the class")?;
            writeln!(
                table,
                "A({}) = A({}) ∪ A({})",
                perms_line(class.basis()),
                perms_line(y.basis()),
                perms_line(z.basis())
            )?;
        }
        Verdict::EvidenceUpTo(n) => {
            writeln!(table, "every pair of members up to length {n} has a joint witness of length <= {witness_len}")?;
        }
        Verdict::Inconclusive => {
            let (a, b) = report.witness_pair.as_ref().unwrap();
            writeln!(table, "inconclusive: {a} and {b} need a witness longer than {witness_len}")?;
        }
    }
    Ok(Output::new(serde_json::to_value(&report)?, table))
}

pub fn classify(pi_path: &Path, class_path: &Path, depth: usize) -> Result<Output> {
    let pi = load_pi(pi_path)?;
    let class = load_class(class_path)?;
    let report = classify_pi(&pi, &class, depth)?;
    let mut table = format!("branch: {}\n", serde_json::to_value(report.branch)?.as_str().unwrap_or_default());
    if let Some(g) = &report.gamma {
        writeln!(table, "gamma: {g}")?;
    }
    if let Some((n, p)) = report.period {
        writeln!(table, "N = {n}, P = {p}")?;
    }
    writeln!(table, "checked to length {} on a window of {}", report.verified_to, report.window)?;
    let empirical = report.empirical;
    let out = Output::new(serde_json::to_value(&report)?, table);
    Ok(if empirical { out.note(EMPIRICAL) } else { out })
}

pub fn encode(text: &str) -> Result<Output> {
    let perm: Perm = text.parse()?;
    let word = encode_perm(&perm);
    let line = word.to_string();
    Ok(Output::new(json!({ "perm": perm, "word": word, "text": line }), format!("{line}\n")))
}

fn parse_word(text: &str) -> Result<RankWord> {
    let t = text.trim();
    let letters: Vec<u32> = if t.contains(|c: char| c == ',' || c.is_whitespace()) {
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|e| anyhow!("bad letter {s:?}: {e}")))
            .collect::<Result<_>>()?
    } else {
        t.chars().map(|c| c.to_digit(10).ok_or_else(|| anyhow!("bad letter {c:?}"))).collect::<Result<_>>()?
    };
    Ok(RankWord::new(letters)?)
}

pub fn decode(text: &str) -> Result<Output> {
    let word = parse_word(text)?;
    let perm = decode_word(&word);
    let line = perm.to_string();
    Ok(Output::new(json!({ "word": word, "perm": perm }), format!("{line}\n")))
}

pub fn sub(path: &Path, k: usize) -> Result<Output> {
    let pi = load_pi(path)?;
    let set = pi.sub_levels(k)?;
    let patterns = set.levels.last().cloned().unwrap_or_default();
    let table = format!("{} patterns of length {k}: {}\n", patterns.len(), perms_line(&patterns));
    let out = Output::new(
        json!({
            "pi": pi,
            "k": k,
            "count": patterns.len(),
            "patterns": patterns,
            "window": set.window,
            "stabilized": set.stabilized,
        }),
        table,
    );
    Ok(if set.stabilized { out } else { out.note(EMPIRICAL) })
}

pub fn landmarks(pi_path: &Path, class_path: &Path, count: usize, horizon: Option<usize>) -> Result<Output> {
    let PiSource::Periodic(pi) = load_pi(pi_path)? else {
        bail!("landmarks needs an ultimately periodic pi ({{\"window\", \"N\", \"P\"}})");
    };
    let class = load_class(class_path)?;
    let c = class.final_components()?;
    let horizon = horizon.unwrap_or_else(|| default_horizon(&pi, class.max_basis_len()));
    let l = find_landmarks(&pi, &c, horizon, count)?;
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let table = format!("k = {}, l = {}\nu: {}\nv: {}\n", l.k, l.l, join(&l.u), join(&l.v));
    let mut payload = serde_json::to_value(&l)?;
    payload["C"] = json!(c.components());
    Ok(Output::new(payload, table))
}

pub fn twin(n: usize) -> Result<Output> {
    let beta = twin_basis_element(n);
    let table = format!("{beta}\n");
    Ok(Output::new(json!({ "n": n, "length": beta.len(), "beta": beta }), table))
}

pub fn growing(depth: usize) -> Result<Output> {
    let report = growing_block_nonexample(depth);
    let mut table = format!(
        "prefix: {}\neventually periodic: {}\n",
        report.prefix.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        match report.periodicity {
            Some((n, p)) => format!("N = {n}, P = {p}"),
            None => "no".into(),
        }
    );
    for s in &report.segments {
        writeln!(
            table,
            "xi ending at {}: {} (indecomposable: {}, embeddings: {}, doubled embeds: {})",
            s.end, s.xi, s.indecomposable, s.embeddings, s.doubled_embeds
        )?;
    }
    Ok(Output::new(serde_json::to_value(&report)?, table))
}
