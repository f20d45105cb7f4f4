use std::io::Write;

use num_bigint::BigUint;
use oddperfect_core::classify::{
    classify, dhp_config_hash, dhp_scan_with, enumerate_multiperfect, odd_multiperfect_scan,
    omega_bound_product,
};
use oddperfect_core::jsonl::{self, short_hash};
use oddperfect_core::quad::{
    certificate_sweep, ratio_identity_check, trace_expansion, two_adic_certificate, QuadInt,
};
use oddperfect_core::search::{
    run_search_with, Equation, SearchConfig, SearchControl, SearchReport, SolutionRecord,
};
use oddperfect_core::{arith, gcd};
use serde_json::json;

use crate::args::{
    BoundArgs, CertifyArgs, ClassifyArgs, Cli, Command, EquationArg, Format, IdentityArgs,
    SearchArgs,
};
use crate::Failure;

type Outcome = Result<(), Failure>;

struct Ctx<'a> {
    format: Format,
    jobs: usize,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Outcome {
        self.out.write_all(s.as_ref().as_bytes())?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    /// Config hash: in the summary for jsonl, on stderr for text.
    fn announce_hash(&mut self, hash: &str) -> Outcome {
        if self.format == Format::Text {
            writeln!(self.err, "config hash: {hash}")?;
        }
        Ok(())
    }

    fn jsonl(&self) -> bool {
        self.format == Format::Jsonl
    }
}

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let jobs = cli
        .jobs
        .map(|j| j as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut ctx = Ctx {
        format: cli.format,
        jobs,
        out,
        err,
    };
    match &cli.command {
        Command::Search(a) => search(&mut ctx, a),
        Command::Certify(a) => certify(&mut ctx, a),
        Command::Classify(a) => classify_cmd(&mut ctx, a),
        Command::Identity(a) => identity(&mut ctx, a),
        Command::Bound(a) => bound(&mut ctx, a),
    }
}

fn search(ctx: &mut Ctx<'_>, a: &SearchArgs) -> Outcome {
    let equation = match a.equation {
        EquationArg::TwoNSquared => Equation::TwoNSquared,
        EquationArg::NSquared => Equation::NSquared,
    };
    let mut cfg =
        SearchConfig::new(equation, a.q_min, a.q_max, a.alpha_min, a.alpha_max).workers(ctx.jobs);
    cfg.residue_filter = a.q_mod4;
    cfg.validate()?;
    let hash = cfg.config_hash();
    cfg.checkpoint_path = a.checkpoint.clone().or_else(|| {
        a.checkpoint_dir
            .as_ref()
            .map(|dir| dir.join(format!("search-{hash}.json")))
    });
    ctx.announce_hash(&hash)?;

    let control = SearchControl {
        halt_after_q: a.halt_after_q,
    };
    let (mut report, failure) = match run_search_with(&cfg, control) {
        Ok(report) => (report, None),
        Err(e) => match e.partial {
            Some(partial) => (*partial, Some(Failure::from(e.error))),
            None => return Err(e.error.into()),
        },
    };
    for (q, alpha, n) in &a.inject_hit {
        report.records.push(SolutionRecord {
            equation,
            q: *q,
            alpha: *alpha,
            n: n.clone(),
            split: None,
        });
    }
    write_search(ctx, &report)?;
    if let Some(f) = failure {
        return Err(f);
    }
    let bad = report.violations();
    if let Some(first) = bad.first() {
        return Err(Failure::Violation(format!(
            "{} hit(s) where none can exist, first: {} q = {}, alpha = {}, n = {}",
            bad.len(),
            equation.name(),
            first.q,
            first.alpha,
            first.n
        )));
    }
    Ok(())
}

fn write_search(ctx: &mut Ctx<'_>, report: &SearchReport) -> Outcome {
    if ctx.jsonl() {
        ctx.out.write_all(report.to_jsonl().as_bytes())?;
        return Ok(());
    }
    let cfg = &report.config;
    let residue = cfg
        .residue_filter
        .map_or_else(|| "any".to_string(), |r| r.to_string());
    ctx.line(format!(
        "{}: q in [{}, {}], q mod 4 = {}, alpha in [{}, {}]",
        cfg.equation.name(),
        cfg.q_min,
        cfg.q_max,
        residue,
        cfg.alpha_min,
        cfg.alpha_max
    ))?;
    if !report.records.is_empty() {
        ctx.line(format!(
            "{:>12} {:>6} {:>24} {:>12} {:>12}",
            "q", "alpha", "n", "n1", "n2"
        ))?;
        for r in &report.records {
            let (n1, n2) = r
                .split
                .as_ref()
                .map_or(("-".to_string(), "-".to_string()), |s| {
                    (s.n1.to_string(), s.n2.to_string())
                });
            ctx.line(format!(
                "{:>12} {:>6} {:>24} {:>12} {:>12}",
                r.q, r.alpha, r.n, n1, n2
            ))?;
        }
    }
    let s = report.summary();
    ctx.line(format!(
        "scanned primes: {}, scanned pairs: {}, skipped even alpha: {}, hits: {}, complete: {}",
        s.scanned_primes, s.scanned_pairs, s.skipped_even_alpha, s.hits, s.complete
    ))
}

fn certify(ctx: &mut Ctx<'_>, a: &CertifyArgs) -> Outcome {
    let certs = match (&a.q, a.q_max) {
        (Some(q), _) => {
            let alpha = a
                .alpha
                .ok_or_else(|| Failure::Usage("--q needs --alpha".into()))?;
            vec![two_adic_certificate(q, alpha)?]
        }
        (None, Some(q_max)) => certificate_sweep(q_max, a.alpha_max, ctx.jobs)?,
        (None, None) => return Err(Failure::Usage("give --q/--alpha or --q-max".into())),
    };
    let hash = short_hash(&match &a.q {
        Some(q) => format!("certify;q={q};alpha={}", a.alpha.unwrap_or_default()),
        None => format!(
            "certify;q_max={};alpha_max={}",
            a.q_max.unwrap_or_default(),
            a.alpha_max
        ),
    });
    ctx.announce_hash(&hash)?;
    let failed = certs.iter().filter(|c| !c.passed).count();
    let single = a.q.is_some();
    if ctx.jsonl() {
        for c in &certs {
            ctx.line(jsonl::to_line(c))?;
        }
        ctx.line(
            json!({"config_hash": hash, "certificates": certs.len(), "failed": failed}).to_string(),
        )?;
    } else if single {
        let c = &certs[0];
        let vals: Vec<String> = c
            .summands
            .iter()
            .map(|t| format!("i={}: {}", t.i, t.v2))
            .collect();
        let s = c.value.as_ref().map_or_else(String::new, |v| v.to_string());
        ctx.line(format!(
            "q = {}, alpha = {}: S = {}, v2(S) = {}, summand valuations [{}], {}",
            c.q,
            c.alpha,
            s,
            c.v2_total,
            vals.join(", "),
            if c.passed { "passed" } else { "FAILED" }
        ))?;
    } else {
        ctx.line(format!(
            "certificates: {}, failed: {}, max summands: {}",
            certs.len(),
            failed,
            certs.iter().map(|c| c.summands.len()).max().unwrap_or(0)
        ))?;
    }
    if failed > 0 {
        let first = certs.iter().find(|c| !c.passed).expect("failed > 0");
        return Err(Failure::Violation(format!(
            "{failed} certificate(s) failed, first q = {}, alpha = {}",
            first.q, first.alpha
        )));
    }
    Ok(())
}

fn classify_cmd(ctx: &mut Ctx<'_>, a: &ClassifyArgs) -> Outcome {
    if let Some(n) = &a.n {
        let hash = short_hash(&format!("classify;n={n}"));
        ctx.announce_hash(&hash)?;
        let report = classify(n)?;
        if ctx.jsonl() {
            ctx.line(jsonl::to_line(&report))?;
            ctx.line(json!({"config_hash": hash, "classified": 1}).to_string())?;
        } else {
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".to_string());
            ctx.line(format!("n = {}", report.n))?;
            ctx.line(format!("sigma = {}", report.sigma))?;
            ctx.line(format!(
                "k = {}",
                opt(report.k.as_ref().map(|k| k.to_string()))
            ))?;
            ctx.line(format!(
                "euler form = {}",
                opt(report
                    .euler_form
                    .as_ref()
                    .map(|e| format!("{}^2 * {}^{}", e.n0, e.q, e.alpha)))
            ))?;
            ctx.line(format!(
                "dhp = {}",
                opt(report
                    .dhp
                    .as_ref()
                    .map(|d| format!("{} * {}^{}", d.m, d.q, d.alpha)))
            ))?;
            ctx.line(format!(
                "v2(sigma) = {}",
                opt(report.chenluo.as_ref().map(|c| format!(
                    "{} (s = {}, sum a = {}, sum b = {})",
                    c.v2_sigma,
                    c.s,
                    c.primes.iter().map(|p| p.a).sum::<u64>(),
                    c.primes.iter().map(|p| p.b).sum::<u64>()
                )))
            ))?;
            ctx.line(format!("primality = {}", report.primality))?;
        }
        return Ok(());
    }

    let limit = a.limit;
    if a.dhp_scan {
        let hash = dhp_config_hash(limit);
        ctx.announce_hash(&hash)?;
        let path = a.checkpoint.clone().or_else(|| {
            a.checkpoint_dir
                .as_ref()
                .map(|dir| dir.join(format!("dhp-{hash}.json")))
        });
        let scan = dhp_scan_with(limit, ctx.jobs, path.as_deref(), a.halt_after_n)?;
        let members: Vec<u64> = scan.hits.iter().map(|(n, _)| *n).collect();
        if ctx.jsonl() {
            for (n, d) in &scan.hits {
                let mut v = serde_json::to_value(d).expect("serializable");
                v["n"] = json!(n);
                ctx.line(v.to_string())?;
            }
            ctx.line(
                json!({
                    "config_hash": hash,
                    "limit": limit,
                    "hits": members.len(),
                    "members": members,
                    "complete": scan.complete,
                })
                .to_string(),
            )?;
        } else {
            ctx.line(json!(members).to_string())?;
            if !scan.complete {
                ctx.line(format!("halted, next n = {}", scan.cursor))?;
            }
        }
        // only 672 and even perfect numbers admit the decomposition
        for &n in &members {
            let k = oddperfect_core::classify::abundancy(&BigUint::from(n))?.k;
            let even_perfect = n % 2 == 0 && k == Some(BigUint::from(2u32));
            if n != 672 && !even_perfect {
                return Err(Failure::Violation(format!(
                    "{n} has a DHP decomposition but is neither 672 nor an even perfect number"
                )));
            }
        }
        return Ok(());
    }

    let odd_only = a.odd_scan;
    let hash = short_hash(&format!(
        "classify;{};limit={limit}",
        if odd_only { "odd_scan" } else { "multiperfect" }
    ));
    ctx.announce_hash(&hash)?;
    let found: Vec<(u64, u64)> = if odd_only {
        odd_multiperfect_scan(limit, ctx.jobs)?
            .into_iter()
            .map(|n| (n, 1))
            .collect()
    } else {
        enumerate_multiperfect(limit, ctx.jobs)?
            .into_iter()
            .map(|m| (m.n, m.k))
            .collect()
    };
    if ctx.jsonl() {
        for (n, k) in &found {
            ctx.line(json!({"n": n, "k": k}).to_string())?;
        }
        ctx.line(json!({"config_hash": hash, "limit": limit, "hits": found.len()}).to_string())?;
    } else {
        for (n, k) in &found {
            ctx.line(format!("{n} {k}"))?;
        }
    }
    if odd_only && found.iter().any(|&(n, _)| n != 1) {
        return Err(Failure::Violation(
            "found an odd multiperfect number other than 1".into(),
        ));
    }
    Ok(())
}

fn identity(ctx: &mut Ctx<'_>, a: &IdentityArgs) -> Outcome {
    let hash = short_hash(&format!(
        "identity;m_max={};q_max={};ratio_m_max={};gcd_q_max={};gcd_m_max={}",
        a.m_max, a.q_max, a.ratio_m_max, a.gcd_q_max, a.gcd_m_max
    ));
    ctx.announce_hash(&hash)?;

    let mut trace = (0u64, 0u64);
    for q in arith::primes_up_to(a.q_max) {
        let d = QuadInt::parameter_for(&BigUint::from(q));
        let plus = QuadInt::one_plus(d.clone(), 1)?;
        let minus = QuadInt::one_plus(d.clone(), -1)?;
        for m in 1..=a.m_max {
            let t = trace_expansion(m, &d)?;
            trace.0 += 1;
            if plus.pow(m).trace() != t || minus.pow(m).trace() != t {
                trace.1 += 1;
            }
        }
    }

    let mut ratio = (0u64, 0u64);
    for m in 4..=a.ratio_m_max {
        for i in 2..=m / 2 {
            ratio.0 += 1;
            if !ratio_identity_check(m, i)? {
                ratio.1 += 1;
            }
        }
    }

    let mut gcds = (0u64, 0u64);
    let two = BigUint::from(2u32);
    for q in (3..=a.gcd_q_max).step_by(2) {
        let q = BigUint::from(q);
        let mut pw = BigUint::from(1u32);
        for _ in 1..=a.gcd_m_max {
            pw *= &q;
            gcds.0 += 1;
            if gcd(&(&pw - 1u32), &(&pw + 1u32)) != two {
                gcds.1 += 1;
            }
        }
    }

    let checks = [
        ("trace_expansion", trace),
        ("binomial_ratio", ratio),
        ("consecutive_gcd", gcds),
    ];
    let failures: u64 = checks.iter().map(|(_, (_, f))| f).sum();
    if ctx.jsonl() {
        for (name, (cases, failed)) in checks {
            ctx.line(json!({"check": name, "cases": cases, "failures": failed}).to_string())?;
        }
        ctx.line(
            json!({"config_hash": hash, "checks": checks.len(), "failures": failures}).to_string(),
        )?;
    } else {
        for (name, (cases, failed)) in checks {
            ctx.line(format!("{name:<16} cases: {cases:>7}  failures: {failed}"))?;
        }
    }
    if failures > 0 {
        return Err(Failure::Violation(format!(
            "{failures} identity check(s) failed"
        )));
    }
    Ok(())
}

fn bound(ctx: &mut Ctx<'_>, a: &BoundArgs) -> Outcome {
    let hash = short_hash(&format!("bound;count={}", a.count));
    ctx.announce_hash(&hash)?;
    let product = omega_bound_product(a.count)?;
    if ctx.jsonl() {
        let mut v = json!({"count": a.count});
        v["product"] = serde_json::Value::Number(
            product
                .to_string()
                .parse()
                .expect("decimal digits form a JSON number"),
        );
        ctx.line(v.to_string())?;
        ctx.line(json!({"config_hash": hash}).to_string())?;
    } else {
        ctx.line(product.to_string())?;
    }
    Ok(())
}
