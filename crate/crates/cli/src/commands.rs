use std::collections::BTreeSet;

use blockwise_core::counting::{ratio_csv, ratio_table, CountRow, CountTable, Method};
use blockwise_core::enumeration::{enumerate, PermClass};
use blockwise_core::eulerian::{gamma_expand, two_sided_poly, BivarPoly, GammaExpansion};
use blockwise_core::polygon::{
    dissection_to_poset, enumerate_valid_dissections, poset_to_dissection, PolygonDissection,
    DISSECTION_CAP,
};
use blockwise_core::poset::{blockwise_posets, build_interval_poset, count_distinct_posets};
use blockwise_core::series::{claw_count_formula, claw_gf_coeffs};
use blockwise_core::{decomp_tree, is_blockwise_simple, Error, Permutation};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::args::{ClassifyOpts, Format, MethodArg, Opts};

pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub type Outcome = Result<Output, Failure>;

/// One result in every format, plus the cross-check when one was asked for.
pub struct Output {
    pub json: Value,
    pub csv: String,
    pub plain: String,
    pub check: Option<Check>,
}

pub struct Check {
    pub agree: bool,
    pub lines: Vec<String>,
}

impl Output {
    /// Text for stdout and, for CSV, the check report that goes to stderr.
    pub fn render(mut self, format: Format) -> (String, Option<String>) {
        let check = self.check.take();
        match format {
            Format::Json => {
                if let (Some(c), Value::Object(m)) = (&check, &mut self.json) {
                    m.insert(
                        "check".into(),
                        json!({ "agree": c.agree, "details": c.lines }),
                    );
                }
                let text = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                (text + "\n", None)
            }
            Format::Csv => (self.csv, check.map(|c| report(&c))),
            Format::Plain => {
                let mut text = self.plain;
                if let Some(c) = check {
                    text.push_str(&report(&c));
                }
                (text, None)
            }
        }
    }
}

fn report(c: &Check) -> String {
    c.lines.iter().map(|l| format!("check: {l}\n")).collect()
}

fn plain_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn cap(o: &Opts) -> Result<usize, Failure> {
    o.cap().map_err(Failure::Usage)
}

fn reject_method(o: &Opts, command: &str) -> Result<(), Failure> {
    match o.method {
        None | Some(MethodArg::Bruteforce) => Ok(()),
        Some(m) => Err(Failure::Usage(format!(
            "{command} is computed by exhaustive search only; --method {m:?} does not apply"
        ))),
    }
}

const ALL_METHODS: [Method; 3] = [Method::Bruteforce, Method::Recursion, Method::Series];

/// Recomputes `lo..=hi` with every method that applies (brute force only up
/// to the cap) and compares `w_n` everywhere and `s_n` from `n = 4` on.
fn check_counts(primary: &CountTable, lo: usize, hi: usize, cap: usize) -> Result<Check, Failure> {
    let mut tables = Vec::new();
    for m in ALL_METHODS {
        if m == primary.method {
            tables.push(primary.clone());
        } else if m != Method::Bruteforce || hi <= cap {
            tables.push(CountTable::compute(m, lo, hi, cap)?);
        }
    }
    let names: Vec<String> = tables.iter().map(|t| t.method.to_string()).collect();
    let mut lines = Vec::new();
    for (k, n) in (lo..=hi).enumerate() {
        let rows: Vec<&CountRow> = tables.iter().map(|t| &t.rows[k]).collect();
        let w: Vec<String> = rows.iter().map(|r| r.w.to_string()).collect();
        if w.iter().any(|x| *x != w[0]) {
            lines.push(format!("n = {n}: w_n differs: {}", pairs(&names, &w)));
        }
        let s: Vec<String> = rows.iter().map(|r| r.s.to_string()).collect();
        if n >= 4 && s.iter().any(|x| *x != s[0]) {
            lines.push(format!("n = {n}: s_n differs: {}", pairs(&names, &s)));
        }
    }
    let agree = lines.is_empty();
    if names.len() < 2 {
        lines.push(format!(
            "only {} applies to n = {lo}..{hi}; nothing to compare",
            names[0]
        ));
    } else if agree {
        lines.push(format!(
            "{} agree on w_n for n = {lo}..{hi} and on s_n for n >= 4",
            names.join(", ")
        ));
    }
    Ok(Check { agree, lines })
}

fn pairs(names: &[String], values: &[String]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn count(o: &Opts) -> Outcome {
    let cap = cap(o)?;
    let method: Method = o.method.unwrap_or(MethodArg::Recursion).into();
    let table = CountTable::compute(method, o.n.lo, o.n.hi, cap)?;
    let check = if o.check {
        Some(check_counts(&table, o.n.lo, o.n.hi, cap)?)
    } else {
        None
    };
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.w.to_string(), r.s.to_string()])
        .collect();
    Ok(Output {
        json: table.to_json(),
        csv: table.to_csv(),
        plain: plain_table(&["n", "w_n", "s_n"], &rows),
        check,
    })
}

pub fn ratio(o: &Opts) -> Outcome {
    let cap = cap(o)?;
    let method: Method = o.method.unwrap_or(MethodArg::Recursion).into();
    let table = CountTable::compute(method, 1, o.n.hi, cap)?;
    let check = if o.check {
        Some(check_counts(&table, 1, o.n.hi, cap)?)
    } else {
        None
    };
    let by_n = |f: fn(&CountRow) -> BigInt| -> Vec<BigInt> {
        std::iter::once(BigInt::from(0))
            .chain(table.rows.iter().map(f))
            .collect()
    };
    let s = by_n(|r| r.s.clone());
    let w = by_n(|r| r.w.clone());
    let rows: Vec<_> = ratio_table(o.n.hi, &s, &w)?
        .into_iter()
        .filter(|r| r.n >= o.n.lo)
        .collect();
    let json = json!({
        "method": method.to_string(),
        "n": rows.iter().map(|r| r.n).collect::<Vec<_>>(),
        "R_n_exact": rows.iter().map(|r| r.unreduced.clone()).collect::<Vec<_>>(),
        "R_n_reduced": rows.iter().map(|r| r.exact.to_string()).collect::<Vec<_>>(),
        "R_n_decimal": rows.iter().map(|r| r.decimal.clone()).collect::<Vec<_>>(),
    });
    let plain_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.unreduced.clone(), r.decimal.clone()])
        .collect();
    Ok(Output {
        json,
        csv: ratio_csv(&rows),
        plain: plain_table(&["n", "R_n_exact", "R_n_decimal"], &plain_rows),
        check,
    })
}

fn poset_count(method: Method, n: usize, cap: usize, gf: &[BigInt]) -> Result<BigInt, Failure> {
    Ok(match method {
        Method::Bruteforce => BigInt::from(count_distinct_posets(n, cap)?),
        Method::Recursion => claw_count_formula(n)?,
        Method::Series => gf[n].clone(),
    })
}

/// Posets by exhaustive search, by the closed formula (listed as the
/// recursion method) and by the generating function.
pub fn posets(o: &Opts) -> Outcome {
    let cap = cap(o)?;
    let method: Method = o.method.unwrap_or(MethodArg::Series).into();
    let gf = claw_gf_coeffs(o.n.hi)?;
    let mut counts = Vec::new();
    for n in o.n.iter() {
        counts.push(poset_count(method, n, cap, &gf)?);
    }
    let check = if o.check {
        let mut lines = Vec::new();
        let mut compared = Vec::new();
        for (n, c) in o.n.iter().zip(&counts) {
            let mut names = vec![method.to_string()];
            let mut values = vec![c.to_string()];
            for m in ALL_METHODS {
                let applies = match m {
                    Method::Bruteforce => n <= cap,
                    Method::Recursion => n >= 4,
                    Method::Series => true,
                };
                if m != method && applies {
                    names.push(m.to_string());
                    values.push(poset_count(m, n, cap, &gf)?.to_string());
                }
            }
            if values.iter().any(|v| *v != values[0]) {
                lines.push(format!(
                    "n = {n}: counts differ: {}",
                    pairs(&names, &values)
                ));
            }
            compared.push(format!("n = {n}: {}", names.join(", ")));
        }
        let agree = lines.is_empty();
        if agree {
            lines.push(format!("agree ({})", compared.join("; ")));
        }
        Some(Check { agree, lines })
    } else {
        None
    };
    let ns: Vec<usize> = o.n.iter().collect();
    let csv: String = std::iter::once("n,posets\n".to_string())
        .chain(ns.iter().zip(&counts).map(|(n, c)| format!("{n},{c}\n")))
        .collect();
    let rows: Vec<Vec<String>> = ns
        .iter()
        .zip(&counts)
        .map(|(n, c)| vec![n.to_string(), c.to_string()])
        .collect();
    Ok(Output {
        json: json!({
            "method": method.to_string(),
            "n": ns,
            "posets": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
        csv,
        plain: plain_table(&["n", "posets"], &rows),
        check,
    })
}

/// Dissections of the `(n+1)`-gon; with `--check`, the count is compared
/// with the poset count and, up to the cap, the bijection with the interval
/// posets is verified in both directions.
pub fn polygon(o: &Opts) -> Outcome {
    reject_method(o, "polygon")?;
    let cap = cap(o)?;
    if o.n.hi + 1 > DISSECTION_CAP {
        return Err(Failure::Core(Error::CapExceeded {
            n: o.n.hi + 1,
            cap: DISSECTION_CAP,
        }));
    }
    let mut all: Vec<(usize, Vec<PolygonDissection>)> = Vec::new();
    for n in o.n.iter() {
        all.push((n, enumerate_valid_dissections(n + 1, DISSECTION_CAP)?));
    }
    let check = if o.check {
        let gf = claw_gf_coeffs(o.n.hi)?;
        let mut lines = Vec::new();
        for (n, ds) in &all {
            let n = *n;
            if BigInt::from(ds.len()) != gf[n] {
                lines.push(format!(
                    "n = {n}: {} dissections but {} posets",
                    ds.len(),
                    gf[n]
                ));
            }
            if (4..=cap).contains(&n) {
                if let Some(problem) = bijection_problem(n, ds, cap)? {
                    lines.push(format!("n = {n}: {problem}"));
                }
            }
        }
        let agree = lines.is_empty();
        if agree {
            lines.push(format!(
                "counts match the poset counts for n = {}..{}; bijection verified for n <= {}",
                o.n.lo,
                o.n.hi,
                o.n.hi.min(cap)
            ));
        }
        Some(Check { agree, lines })
    } else {
        None
    };

    let mut csv = String::from("n,m,dissections\n");
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (n, ds) in &all {
        csv.push_str(&format!("{n},{},{}\n", n + 1, ds.len()));
        rows.push(vec![
            n.to_string(),
            (n + 1).to_string(),
            ds.len().to_string(),
        ]);
        json_rows.push(json!({
            "n": n,
            "m": n + 1,
            "count": ds.len(),
            "dissections": ds.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }));
    }
    let mut plain = plain_table(&["n", "m", "dissections"], &rows);
    if o.n.lo == o.n.hi {
        for d in &all[0].1 {
            plain.push_str(&format!("{d}\n"));
        }
    }
    Ok(Output {
        json: json!({ "rows": json_rows }),
        csv,
        plain,
        check,
    })
}

fn bijection_problem(
    n: usize,
    dissections: &[PolygonDissection],
    cap: usize,
) -> Result<Option<String>, Failure> {
    let posets = blockwise_posets(n, cap)?;
    let mut image = BTreeSet::new();
    for (sig, q) in &posets {
        let d = poset_to_dissection(q)?;
        if dissection_to_poset(&d)? != *q {
            return Ok(Some(format!(
                "poset {} does not survive the round trip",
                sig.0
            )));
        }
        image.insert(d);
    }
    let enumerated: BTreeSet<PolygonDissection> = dissections.iter().cloned().collect();
    if image != enumerated {
        return Ok(Some(format!(
            "{} posets map onto {} dissections, {} were enumerated",
            posets.len(),
            image.len(),
            enumerated.len()
        )));
    }
    Ok(None)
}

struct GammaRow {
    n: usize,
    class: &'static str,
    poly: BivarPoly,
    gamma: GammaExpansion,
}

/// Two-sided Eulerian polynomials of `Simp_n` and `W_n` by exhaustive
/// search, expanded in the gamma basis of darga `n - 1`.
pub fn gamma(o: &Opts) -> Outcome {
    reject_method(o, "gamma")?;
    let cap = cap(o)?;
    let mut rows = Vec::new();
    for n in o.n.iter() {
        for (class, pc) in [
            ("simple", PermClass::Simple),
            ("blockwise", PermClass::Blockwise),
        ] {
            let poly = two_sided_poly(&enumerate(n, pc, cap)?)?;
            let gamma = gamma_expand(&poly, n - 1)?;
            rows.push(GammaRow {
                n,
                class,
                poly,
                gamma,
            });
        }
    }
    let check = if o.check {
        let mut lines: Vec<String> = rows
            .iter()
            .filter(|r| !r.gamma.is_nonnegative())
            .map(|r| format!("n = {}: {} has a negative gamma coefficient", r.n, r.class))
            .collect();
        let agree = lines.is_empty();
        if agree {
            lines.push(format!(
                "Simp_n and W_n are gamma-positive for n = {}..{}",
                o.n.lo, o.n.hi
            ));
        }
        Some(Check { agree, lines })
    } else {
        None
    };

    let mut csv = String::from("n,class,i,j,gamma\n");
    let mut plain = String::new();
    let mut json_rows = Vec::new();
    for r in &rows {
        for ((i, j), g) in &r.gamma.gammas {
            csv.push_str(&format!("{},{},{i},{j},{g}\n", r.n, r.class));
        }
        plain.push_str(&format!(
            "n = {} {}: gamma-positive {}\n  A(s,t) = {}\n  gamma  = {}\n",
            r.n,
            r.class,
            r.gamma.is_nonnegative(),
            r.poly,
            r.gamma
        ));
        json_rows.push(json!({
            "n": r.n,
            "class": r.class,
            "poly": r.poly.to_json(),
            "gamma": r.gamma.to_json(),
            "gamma_positive": r.gamma.is_nonnegative(),
        }));
    }
    Ok(Output {
        json: json!({ "rows": json_rows }),
        csv,
        plain,
        check,
    })
}

pub fn classify(o: &ClassifyOpts) -> Outcome {
    let p: Permutation = o
        .permutation
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let tree = decomp_tree(&p).to_string();
    let poset = build_interval_poset(&p);
    let signature = poset.signature().ok().map(|s| s.0);
    let simple = p.is_simple();
    let bw = is_blockwise_simple(&p);
    let mut plain =
        format!("permutation: {p}\nsimple: {simple}\nblockwise-simple: {bw}\ntree: {tree}\n");
    match &signature {
        Some(s) => plain.push_str(&format!("signature: {s}\n")),
        None => plain.push_str("signature: none (interval poset is not a tree)\n"),
    }
    let csv = format!(
        "permutation,simple,blockwise_simple,tree,signature\n{p},{simple},{bw},\"{tree}\",{}\n",
        signature.clone().unwrap_or_default()
    );
    Ok(Output {
        json: json!({
            "permutation": p.to_string(),
            "simple": simple,
            "blockwise_simple": bw,
            "tree": tree,
            "signature": signature,
            "poset": poset.to_json(),
        }),
        csv,
        plain,
        check: None,
    })
}
