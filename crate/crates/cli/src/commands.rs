use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use pcomm::arith::prime_divisors;
use pcomm::fpr::{coset_action, fixed_point_ratio, point_stabilizer};
use pcomm::groups::parse_cycles;
use pcomm::prob::{self, RatioTable};
use pcomm::verify::{self, CheckId, Corpus, Summary, VerificationReport, VerifyConfig};
use pcomm::{construct, Error, GroupSpec, PermGroup, Permutation, Rational, ENGINE_VERSION};
use serde::Serialize;
use serde_json::json;

use crate::cache::ResultCache;
use crate::text;
use crate::GlobalArgs;

/// Why a command stopped; each kind maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad spec, selector, corpus or file: exit 2.
    Input(String),
    /// Beyond the enumeration or coset-degree bound: exit 3.
    TooLarge(String),
    /// Could not write output: exit 2.
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Io(_) => 2,
            Failure::TooLarge(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GroupTooLarge { .. } | Error::IndexTooLarge { .. } => {
                Failure::TooLarge(format!("{e} (raise it with --max-order)"))
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

/// Report file format version.
pub const REPORT_VERSION: u32 = 1;

fn parse_spec(s: &str) -> Result<GroupSpec, Failure> {
    s.parse().map_err(Failure::from)
}

fn build(g: &GlobalArgs, spec: &GroupSpec) -> Result<PermGroup, Failure> {
    let group = construct(spec)?;
    Ok(match g.max_order {
        Some(bound) => group.with_bound(bound),
        None => group,
    })
}

fn cache(g: &GlobalArgs) -> Option<ResultCache> {
    if g.no_cache {
        return None;
    }
    ResultCache::default_dir().map(ResultCache::new)
}

fn cached_table(g: &GlobalArgs, spec: &GroupSpec, group: Option<&PermGroup>, p: u64) -> Result<RatioTable, Failure> {
    let cache = cache(g);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get::<RatioTable>("ratio_table", spec, Some(p))) {
        return Ok(hit);
    }
    let owned;
    let group = match group {
        Some(group) => group,
        None => {
            owned = build(g, spec)?;
            &owned
        }
    };
    let mut table = prob::ratio_table(group, p)?;
    table.group = Some(spec.to_string());
    if let Some(c) = &cache {
        c.put("ratio_table", spec, Some(p), &table);
    }
    Ok(table)
}

fn exact(r: &Rational) -> String {
    format!("{r} ≈ {} (approximate)", r.approx())
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn ratio_rows(table: &RatioTable) -> String {
    let p = table.prime;
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                i.to_string(),
                r.representative.to_string(),
                r.element_order.to_string(),
                r.class_size.to_string(),
                r.centralizer_p.to_string(),
                r.ratio.to_string(),
                r.ratio.approx(),
            ]
        })
        .collect();
    let cp = format!("|C_G(x)_{p}|");
    let fp = format!("f_{p}(x)");
    text::table(&["class", "representative", "order", "size", &cp, &fp, "≈"], &rows)
}

fn table_summary(table: &RatioTable) -> String {
    let p = table.prime;
    let mut s = format!("|G_{p}| = {}, commuting pairs = {}\n", table.p_elements, table.numerator());
    if let Some(max) = table.fp_max() {
        s.push_str(&format!("f_{p}(G) = {}\n", exact(&max)));
    }
    s
}

pub fn prp(g: &GlobalArgs, spec: &str, p: u64, with_table: bool) -> Outcome {
    let spec = parse_spec(spec)?;
    let table = cached_table(g, &spec, None, p)?;
    let value = table.pr_p();
    if g.json {
        let mut out = json!({ "spec": spec.to_string(), "prime": p, "pr_p": value, "approx": value.approx() });
        if with_table {
            out["table"] = serde_json::to_value(&table).expect("serializable");
        }
        print_json(&out);
    } else {
        println!("Pr_{p}({spec}) = {}", exact(&value));
        if with_table {
            print!("{}{}", table_summary(&table), ratio_rows(&table));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn pr(g: &GlobalArgs, spec: &str) -> Outcome {
    let spec = parse_spec(spec)?;
    let cache = cache(g);
    let value = match cache.as_ref().and_then(|c| c.get::<Rational>("pr", &spec, None)) {
        Some(hit) => hit,
        None => {
            let value = prob::pr_global(&build(g, &spec)?)?;
            if let Some(c) = &cache {
                c.put("pr", &spec, None, &value);
            }
            value
        }
    };
    if g.json {
        print_json(&json!({ "spec": spec.to_string(), "pr": value, "approx": value.approx() }));
    } else {
        println!("Pr({spec}) = {}", exact(&value));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn ratio_table(g: &GlobalArgs, spec: &str, p: Option<u64>) -> Outcome {
    let spec = parse_spec(spec)?;
    let group = build(g, &spec)?;
    let primes = match p {
        Some(p) => vec![p],
        None => prime_divisors(group.order()),
    };
    let tables = primes.iter().map(|&p| cached_table(g, &spec, Some(&group), p)).collect::<Result<Vec<_>, _>>()?;
    if g.json {
        print_json(&tables);
        return Ok(ExitCode::SUCCESS);
    }
    for (i, table) in tables.iter().enumerate() {
        if i > 0 {
            println!();
        }
        println!("p = {}: Pr_{} = {}", table.prime, table.prime, exact(&table.pr_p()));
        print!("{}{}", table_summary(table), ratio_rows(table));
    }
    Ok(ExitCode::SUCCESS)
}

fn select_subgroup(spec: &GroupSpec, group: &PermGroup, selector: &str) -> Result<PermGroup, Failure> {
    let bad = || Failure::Input(format!("unknown subgroup selector `{selector}`"));
    let number = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let (head, arg) = match selector.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a)),
        None => (selector.trim(), None),
    };
    Ok(match (head, arg) {
        ("whole", None) => group.clone(),
        ("trivial", None) => PermGroup::trivial(group.degree()),
        ("stab", Some(n)) => {
            let point = number(n)? as usize;
            if point >= group.degree() {
                return Err(Failure::Input(format!("point {point} is outside 0..{}", group.degree())));
            }
            point_stabilizer(group, point)?
        }
        ("sylow", Some(p)) => group.sylow_subgroup(number(p)?)?,
        ("borel", arg) => {
            let p = match arg {
                Some(p) => number(p)?,
                None => spec
                    .param("p")
                    .map_err(|_| Failure::Input(format!("`borel` needs a prime for {spec}; use borel:P")))?,
            };
            let sylow = group.sylow_subgroup(p)?;
            group.normalizer(&sylow)?
        }
        ("gens", Some(list)) => {
            let gens = list
                .split('|')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_cycles(group.degree(), s))
                .collect::<Result<Vec<_>, _>>()?;
            let sub = group.subgroup(gens)?;
            if !sub.is_subgroup_of(group) {
                return Err(Error::NotASubgroup.into());
            }
            sub
        }
        _ => return Err(bad()),
    })
}

/// Class representatives chosen by the element selector, each with its class size.
fn select_elements(group: &PermGroup, selector: &str) -> Result<Vec<(Permutation, u128)>, Failure> {
    let selector = selector.trim();
    if selector.starts_with('(') {
        let x = parse_cycles(group.degree(), selector)?;
        if !group.contains(&x) {
            return Err(Error::NotAMember.into());
        }
        let size = group.class_elements(&x)?.len() as u128;
        return Ok(vec![(x, size)]);
    }
    let classes = group.conjugacy_classes()?;
    let keep: Box<dyn Fn(u64) -> bool> = match selector.split_once(':') {
        None if selector == "all" => Box::new(|_| true),
        Some(("order", k)) => {
            let k: u64 = k.trim().parse().map_err(|_| Failure::Input(format!("bad element order `{k}`")))?;
            Box::new(move |o| o == k)
        }
        Some(("p", p)) => {
            let p: u64 = p.trim().parse().map_err(|_| Failure::Input(format!("bad prime `{p}`")))?;
            if !pcomm::arith::is_prime(p) {
                return Err(Error::NotPrime(p).into());
            }
            Box::new(move |o| o > 1 && pcomm::arith::is_power_of(o, p))
        }
        _ => return Err(Failure::Input(format!("unknown element selector `{selector}`"))),
    };
    let chosen: Vec<(Permutation, u128)> = classes
        .into_iter()
        .filter(|c| keep(c.element_order))
        .map(|c| (c.representative, c.size))
        .collect();
    if chosen.is_empty() {
        return Err(Failure::Input(format!("no conjugacy class matches `{selector}`")));
    }
    Ok(chosen)
}

pub fn fpr(g: &GlobalArgs, spec: &str, subgroup: &str, elements: &str) -> Outcome {
    let spec = parse_spec(spec)?;
    let group = build(g, &spec)?;
    let h = select_subgroup(&spec, &group, subgroup)?;
    let chosen = select_elements(&group, elements)?;
    let act = coset_action(&group, &h)?;
    let mut rows = Vec::with_capacity(chosen.len());
    for (x, size) in &chosen {
        rows.push((x, size, fixed_point_ratio(&act, x)?));
    }
    if g.json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(x, size, r)| {
                json!({
                    "representative": x,
                    "cycles": x.to_string(),
                    "element_order": x.order(),
                    "class_size": size,
                    "fpr": r,
                })
            })
            .collect();
        print_json(&json!({
            "spec": spec.to_string(),
            "subgroup": subgroup,
            "subgroup_order": h.order(),
            "degree": act.degree(),
            "kernel_order": act.kernel_order(),
            "rows": rows,
        }));
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "{spec} on {} cosets of `{subgroup}` (|H| = {}), kernel order {}",
        act.degree(),
        h.order(),
        act.kernel_order()
    );
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|(x, size, r)| vec![x.to_string(), x.order().to_string(), size.to_string(), r.to_string(), r.approx()])
        .collect();
    print!("{}", text::table(&["representative", "order", "size", "fpr", "≈"], &rows));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PrimeInfo {
    prime: u64,
    sylow_order: u128,
    sylow_count: u128,
    p_core_order: u128,
    p_elements: u128,
    threshold: Rational,
}

#[derive(Serialize)]
struct Structure {
    classes: usize,
    center_order: u128,
    solvable: bool,
    primes: Vec<PrimeInfo>,
}

fn structure(group: &PermGroup) -> Result<Structure, Error> {
    let primes = prime_divisors(group.order())
        .into_iter()
        .map(|p| {
            Ok(PrimeInfo {
                prime: p,
                sylow_order: group.sylow_subgroup(p)?.order(),
                sylow_count: group.sylow_count(p)?,
                p_core_order: group.p_core(p)?.order(),
                p_elements: prob::count_p_elements(group, p)?,
                threshold: prob::f_threshold(p)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Structure {
        classes: group.conjugacy_classes()?.len(),
        center_order: group.center()?.order(),
        solvable: group.is_solvable()?,
        primes,
    })
}

pub fn construct_info(g: &GlobalArgs, spec: &str) -> Outcome {
    let spec = parse_spec(spec)?;
    let group = build(g, &spec)?;
    let structure = match structure(&group) {
        Ok(s) => Ok(s),
        Err(e @ (Error::GroupTooLarge { .. } | Error::IndexTooLarge { .. })) => Err(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    if g.json {
        let mut out = json!({
            "spec": spec.to_string(),
            "degree": group.degree(),
            "order": group.order(),
            "abelian": group.is_abelian(),
            "generators": group.generators(),
        });
        match structure {
            Ok(s) => out["structure"] = serde_json::to_value(s).expect("serializable"),
            Err(skipped) => out["structure_skipped"] = json!(skipped),
        }
        print_json(&out);
        return Ok(ExitCode::SUCCESS);
    }
    println!("spec: {spec}");
    println!("degree: {}", group.degree());
    println!("order: {}", group.order());
    println!("abelian: {}", group.is_abelian());
    println!("generators:");
    for x in group.generators() {
        println!("  {x}");
    }
    match structure {
        Ok(s) => {
            println!("conjugacy classes: {}", s.classes);
            println!("center order: {}", s.center_order);
            println!("solvable: {}", s.solvable);
            let rows: Vec<Vec<String>> = s
                .primes
                .iter()
                .map(|i| {
                    vec![
                        i.prime.to_string(),
                        i.sylow_order.to_string(),
                        i.sylow_count.to_string(),
                        i.p_core_order.to_string(),
                        i.p_elements.to_string(),
                        i.threshold.to_string(),
                    ]
                })
                .collect();
            print!("{}", text::table(&["p", "|P|", "Sylow count", "|O_p|", "|G_p|", "f(p)"], &rows));
        }
        Err(skipped) => println!("structure: skipped ({skipped})"),
    }
    Ok(ExitCode::SUCCESS)
}

pub struct VerifyOptions {
    pub corpus: Option<PathBuf>,
    pub theorems: Option<String>,
    pub report: Option<PathBuf>,
    pub no_timings: bool,
    pub verbose: bool,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    version: u32,
    engine: &'a str,
    corpus: String,
    summary: Summary,
    reports: &'a [VerificationReport],
}

fn text_report(reports: &[VerificationReport], summary: &Summary, verbose: bool) -> String {
    let mut out = String::new();
    for r in reports.iter().filter(|r| verbose || r.verdict != verify::Verdict::Pass) {
        out.push_str(&r.summary_line());
        out.push('\n');
    }
    out.push_str(&format!("{summary}\n"));
    out
}

pub fn verify(g: &GlobalArgs, opts: &VerifyOptions) -> Outcome {
    let (corpus, source) = match &opts.corpus {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            let corpus = Corpus::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            (corpus, path.display().to_string())
        }
        None => (Corpus::default_corpus(), "default".to_string()),
    };
    let mut config = VerifyConfig { record_timings: !opts.no_timings, ..VerifyConfig::default() };
    if let Some(list) = &opts.theorems {
        config.checks = Some(CheckId::parse_list(list)?.into_iter().collect());
    }
    if let Some(bound) = g.max_order {
        config.enumeration_bound = bound;
    }
    let reports = verify::run_corpus(&corpus, &config);
    let summary = Summary::of(&reports);
    let file = ReportFile { version: REPORT_VERSION, engine: ENGINE_VERSION, corpus: source, summary, reports: &reports };
    let json_text = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
    if let Some(path) = &opts.report {
        let io = |e: std::io::Error| Failure::Io(format!("cannot write {}: {e}", path.display()));
        fs::write(path, &json_text).map_err(io)?;
        fs::write(path.with_extension("txt"), text_report(&reports, &summary, true)).map_err(io)?;
    }
    if g.json {
        print!("{json_text}");
    } else {
        print!("{}", text_report(&reports, &summary, opts.verbose));
    }
    Ok(if summary.fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn cache_clear() -> Outcome {
    let dir = ResultCache::default_dir()
        .ok_or_else(|| Failure::Input("no cache directory: set PCOMM_CACHE_DIR or HOME".to_string()))?;
    let removed = ResultCache::new(&dir)
        .clear()
        .map_err(|e| Failure::Io(format!("cannot clear {}: {e}", dir.display())))?;
    println!("removed {removed} cached results from {}", dir.display());
    Ok(ExitCode::SUCCESS)
}
