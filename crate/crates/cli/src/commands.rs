//! One function per subcommand. Each returns the finished report; nothing
//! is written until the whole computation succeeds.

use std::sync::Arc;

use gradedgrowth::filtration::{
    aug_ladder, build_group_algebra_with_cap, free_graded_dims, generator_elements, graded_dims_dual, growth_report,
    rs_generators, rs_step_bound, Degree, GrowthReport,
};
use gradedgrowth::group::registry::{builtin_names, finite_builtin};
use gradedgrowth::group::{
    ball_with_cap, find_dead_ends, Element, FiniteGroup, FreeAbelianGroup, Group, GroupKind, HeisenbergGroup,
};
use gradedgrowth::gs::{gs_certificate, relator_degrees, verify_certificate, GsPresentation};
use gradedgrowth::hecke::{parse_group_ring_element, GroupRingElement, HeckeAlgebra};
use gradedgrowth::report::fraction_json;
use gradedgrowth::rewriting::Presentation;
use gradedgrowth::ring::{parse_rational, rational_to_f64, Integers, PrimeField, Rationals, Ring};
use gradedgrowth::subspace::AlgebraElement;
use gradedgrowth::tiling::{
    algebra_tiling_probe, build_transversal, folner_search_with_cap, verify_tiling_certificate, ChainSpec,
    QuotientChain, TilingOptions, DEFAULT_SET_CAP,
};
use gradedgrowth::{Error, Result};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{json_report, tsv_report, Format, Report};
use crate::{Command, Context, CrystalCommon, CrystalOp};

/// Finite groups above this order are refused unless a budget says otherwise.
const DEFAULT_MAX_ORDER: usize = 1 << 20;
/// Finite groups up to this order get the full ideal-power ladder.
const LADDER_MAX_ORDER: usize = 1024;
/// Degrees computed for Z^d and the Heisenberg group unless --max-n says otherwise.
const DEFAULT_DUAL_DEGREE: usize = 16;

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report> {
    match cmd {
        Command::Groups => groups(ctx),
        Command::Growth(a) => growth(a, ctx),
        Command::Deadends(a) => deadends(a, ctx),
        Command::Folner(a) => folner(a, ctx),
        Command::Tile(a) => tile(a, ctx),
        Command::TileAlgebraProbe(a) => probe(a, ctx),
        Command::Crystal(a) => crystal(&a.op, ctx),
        Command::RsCheck(a) => rs_check(a, ctx),
        Command::Gs(a) => gs(a, ctx),
        Command::Verify(a) => verify(a, ctx),
    }
}

impl Context {
    fn group(&self, name: &str) -> Result<Arc<dyn Group>> {
        self.registry.get(name)
    }

    fn cap(&self, default: usize) -> usize {
        self.budget.map_or(default, |b| b.min(default))
    }

    fn format(&self, default: Format, command: &str, tsv_ok: bool) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if f == Format::Tsv && !tsv_ok {
            return Err(Error::Parse(format!("{command} has no TSV output; use --format json")));
        }
        Ok(f)
    }

    fn config(&self, format: Format) -> Value {
        let mut c = self.config.clone();
        c["format"] = json!(format);
        c
    }

    fn json(&self, body: Value) -> Result<Report> {
        let format = self.format(Format::Json, "this command", false)?;
        Ok(Report::ok(json_report(&self.config(format), body)))
    }
}

/// A finite group by name: registry entries are enumerated, built-ins
/// come from their tables.
fn finite_group(ctx: &Context, name: &str) -> Result<FiniteGroup> {
    let cap = ctx.cap(DEFAULT_MAX_ORDER);
    if ctx.registry.entry(name).is_some() {
        FiniteGroup::from_group(ctx.group(name)?.as_ref(), cap)
    } else {
        finite_builtin(name, cap)
    }
}

/// Split on commas outside parentheses and brackets.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// `ball:R` or a comma-separated element list; `e` is the identity.
fn parse_elements(g: &dyn Group, s: &str, cap: usize) -> Result<Vec<Element>> {
    if let Some(r) = s.trim().strip_prefix("ball:") {
        let r: usize = r.trim().parse().map_err(|_| Error::Parse(format!("bad radius in {s:?}")))?;
        return Ok(ball_with_cap(g, r, cap)?.elements().to_vec());
    }
    split_top_level(s)
        .iter()
        .map(|t| if t == "e" || t == "1" { Ok(g.identity()) } else { g.parse(t) })
        .collect()
}

fn decimal(r: &BigRational) -> f64 {
    rational_to_f64(r)
}

fn groups(ctx: &Context) -> Result<Report> {
    let format = ctx.format(Format::Tsv, "groups", true)?;
    let mut rows: Vec<Vec<String>> =
        builtin_names().into_iter().map(|(n, d)| vec![n.to_string(), "builtin".into(), d.to_string()]).collect();
    for name in ctx.registry.names() {
        let e = ctx.registry.entry(name).expect("listed names have entries");
        rows.push(vec![name.to_string(), "registry".into(), format!("{} {}", e.kind, e.params)]);
    }
    let config = ctx.config(format);
    Ok(Report::ok(match format {
        Format::Tsv => tsv_report(&config, &["name", "source", "description"], &rows, &[]),
        Format::Json => json_report(
            &config,
            json!({ "groups": rows.iter().map(|r| json!({"name": r[0], "source": r[1], "description": r[2]})).collect::<Vec<_>>() }),
        ),
    }))
}

fn trim_zeros(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn dims_of_finite(g: &FiniteGroup, p: u32, cap: usize) -> Result<(Vec<usize>, &'static str)> {
    if g.len() <= LADDER_MAX_ORDER {
        let alg = build_group_algebra_with_cap(Arc::new(g.clone()), p, cap)?;
        Ok((aug_ladder(&alg)?.graded_dims, "ladder"))
    } else {
        Ok((trim_zeros(graded_dims_dual(g, p, g.len())?), "dual"))
    }
}

fn growth(a: &crate::GrowthArgs, ctx: &Context) -> Result<Report> {
    let format = ctx.format(Format::Tsv, "growth", true)?;
    let g = ctx.group(&a.group)?;
    let cap = ctx.cap(DEFAULT_MAX_ORDER);
    let mut notes = Vec::new();
    let (mut dims, method) = match g.kind() {
        GroupKind::Free { rank } => {
            let n = a.max_n.unwrap_or(6);
            (free_graded_dims(rank, n, a.p, n)?, "magnus")
        }
        kind @ (GroupKind::FreeAbelian { modulus: None, .. } | GroupKind::Heisenberg { modulus: None }) => {
            let m = |e: u32| {
                (a.p as u64)
                    .checked_pow(e)
                    .ok_or_else(|| Error::Resource(format!("{}^{e} overflows", a.p)))
            };
            let quotient = |modulus: u64| -> Result<FiniteGroup> {
                match kind {
                    GroupKind::FreeAbelian { dim, .. } => FiniteGroup::from_group(&FreeAbelianGroup::new(dim, Some(modulus)), cap),
                    _ => FiniteGroup::from_group(&HeisenbergGroup::new(Some(modulus)), cap),
                }
            };
            let (lo, hi) = (quotient(m(a.level)?)?, quotient(m(a.level + 1)?)?);
            let n_max = a.max_n.unwrap_or(DEFAULT_DUAL_DEGREE);
            let lower = graded_dims_dual(&lo, a.p, n_max)?;
            let upper = graded_dims_dual(&hi, a.p, n_max)?;
            let horizon = gradedgrowth::filtration::agreement_horizon(&lower, &upper);
            notes.push(format!("quotients {} and {}; rows before degree {horizon} agree", lo.name(), hi.name()));
            (upper[..horizon].to_vec(), "dual")
        }
        _ if g.order().is_some() => {
            let f = finite_group(ctx, &a.group)?;
            let (d, m) = dims_of_finite(&f, a.p, cap)?;
            (d, m)
        }
        _ => {
            return Err(Error::Contract(format!(
                "no finite p-quotients are built in for {}; growth supports finite groups, free groups, Z^d and the Heisenberg group",
                g.name()
            )))
        }
    };
    if let Some(n) = a.max_n {
        dims.truncate(n + 1);
    }
    let dims64: Vec<u64> = dims.iter().map(|&d| d as u64).collect();
    let report = growth_report(&dims64);
    let config = ctx.config(format);
    Ok(Report::ok(match format {
        Format::Tsv => {
            let rows: Vec<Vec<String>> = dims.iter().enumerate().map(|(n, d)| vec![n.to_string(), d.to_string()]).collect();
            let mut trailer = vec![format!("method {method}")];
            trailer.extend(notes);
            trailer.extend(growth_lines(&report));
            tsv_report(&config, &["n", "r_n"], &rows, &trailer)
        }
        Format::Json => json_report(&config, json!({ "method": method, "notes": notes, "dims": dims, "growth": report })),
    }))
}

fn growth_lines(r: &GrowthReport) -> Vec<String> {
    let mut out = Vec::new();
    if let (Some(v), Some(n)) = (r.fekete_estimate, r.fekete_argmin) {
        out.push(format!("fekete_estimate {v:.6} at n={n}"));
    }
    out.push(format!("roots_nonincreasing {}", r.roots_nonincreasing));
    if let Some(d) = r.polynomial_degree_fit {
        out.push(format!("polynomial_degree_fit {d:.6}"));
    }
    out.push(format!("submultiplicativity_violations {}", r.submultiplicativity_violations.len()));
    out
}

fn deadends(a: &crate::DeadendsArgs, ctx: &Context) -> Result<Report> {
    let format = ctx.format(Format::Tsv, "deadends", true)?;
    let g = ctx.group(&a.group)?;
    let found = find_dead_ends(g.as_ref(), a.radius)?;
    let ball = ball_with_cap(g.as_ref(), a.radius, ctx.cap(usize::MAX))?;
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|e| Ok(vec![g.format(e), ball.word_length(e)?.to_string()]))
        .collect::<Result<_>>()?;
    let config = ctx.config(format);
    Ok(Report::ok(match format {
        Format::Tsv => tsv_report(&config, &["element", "length"], &rows, &[]),
        Format::Json => json_report(
            &config,
            json!({ "dead_ends": rows.iter().map(|r| json!({"element": r[0], "length": r[1].parse::<usize>().unwrap()})).collect::<Vec<_>>() }),
        ),
    }))
}

fn folner(a: &crate::FolnerArgs, ctx: &Context) -> Result<Report> {
    let g = ctx.group(&a.group)?;
    let cap = ctx.cap(DEFAULT_SET_CAP);
    let k = parse_elements(g.as_ref(), &a.k, cap)?;
    let bound = parse_rational(&a.bound)?;
    let f = folner_search_with_cap(g.as_ref(), &k, &bound, a.max_radius, cap)?;
    ctx.json(json!({
        "label": f.label,
        "size": f.elements.len(),
        "defect": fraction_json(&f.defect),
        "defect_decimal": decimal(&f.defect),
        "elements": f.elements.iter().map(|x| g.format(x)).collect::<Vec<_>>(),
    }))
}

fn tiling_options(ctx: &Context, base: u64, height: Option<usize>, max_radius: usize) -> TilingOptions {
    let d = TilingOptions::default();
    TilingOptions {
        height,
        box_base: base,
        max_radius,
        set_cap: ctx.cap(d.set_cap),
        omega_cap: ctx.cap(d.omega_cap),
        ..d
    }
}

fn tile(a: &crate::TileArgs, ctx: &Context) -> Result<Report> {
    let g = ctx.group(&a.group)?;
    let mut opts = tiling_options(ctx, a.base, a.height, a.max_radius);
    opts.delta = a.delta.as_deref().map(parse_rational).transpose()?;
    opts.zeta = a.zeta.as_deref().map(parse_rational).transpose()?;
    let k = parse_elements(g.as_ref(), &a.k, opts.set_cap)?;
    let eps = parse_rational(&a.epsilon)?;
    let chain = match &a.chain {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let spec: ChainSpec = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("chain: {e}")))?;
            QuotientChain::from_spec(g.clone(), spec)?
        }
        None => QuotientChain::powers(g.clone(), a.base)?,
    };
    let cert = build_transversal(g.clone(), &k, &eps, &chain, &opts)?;
    ctx.json(cert.to_json(g.as_ref()))
}

fn probe(a: &crate::ProbeArgs, ctx: &Context) -> Result<Report> {
    let g = ctx.group(&a.group)?;
    let field = PrimeField::new(a.p)?;
    let basis: Vec<AlgebraElement> = a
        .basis
        .iter()
        .map(|s| Ok(parse_group_ring_element(g.as_ref(), &field, s)?.into_iter().collect()))
        .collect::<Result<_>>()?;
    let eps = parse_rational(&a.epsilon)?;
    let chain = QuotientChain::powers(g.clone(), a.base)?;
    let opts = tiling_options(ctx, a.base, a.height, TilingOptions::default().max_radius);
    let report = algebra_tiling_probe(g.clone(), a.p, &basis, &eps, &chain, &opts)?;
    ctx.json(report.to_json(g.as_ref()))
}

fn crystal(op: &CrystalOp, ctx: &Context) -> Result<Report> {
    let common = match op {
        CrystalOp::Mul { common, .. } | CrystalOp::Untwist { common, .. } | CrystalOp::CheckMonomial { common, .. } => common,
    };
    let body = match common.ring.as_str() {
        "z" => crystal_in(Integers, common, op, ctx)?,
        "q" => crystal_in(Rationals, common, op, ctx)?,
        p => {
            let p: u32 = p.parse().map_err(|_| Error::Parse(format!("ring {p:?} is not z, q or a prime")))?;
            crystal_in(PrimeField::new(p)?, common, op, ctx)?
        }
    };
    ctx.json(body)
}

fn format_group_ring<R: Ring>(g: &dyn Group, ring: &R, a: &GroupRingElement<R>) -> String {
    if a.is_empty() {
        return "0".into();
    }
    a.iter().map(|(x, c)| format!("{}*{}", ring.format(c), g.format(x))).collect::<Vec<_>>().join(" + ")
}

fn crystal_in<R: Ring>(ring: R, common: &CrystalCommon, op: &CrystalOp, ctx: &Context) -> Result<Value> {
    let g = ctx.group(&common.group)?;
    let lambda = ring.parse(&common.lambda)?;
    let radius = match op {
        CrystalOp::CheckMonomial { check_radius, .. } => common.radius.max(2 * check_radius),
        _ => common.radius,
    };
    let ball = ball_with_cap(g.as_ref(), radius, ctx.cap(usize::MAX))?;
    let alg = HeckeAlgebra::new(g.as_ref(), &ball, ring.clone(), lambda);
    let base = json!({ "ring": ring.name(), "lambda": ring.format(alg.lambda()), "ball_radius": radius });
    let extra = match op {
        CrystalOp::Mul { a, b, .. } => {
            let (x, y) = (alg.parse_element(a)?, alg.parse_element(b)?);
            json!({ "product": alg.format_element(&alg.mul(&x, &y)?) })
        }
        CrystalOp::Untwist { a, .. } => {
            let x = alg.parse_element(a)?;
            json!({ "untwisted": format_group_ring(g.as_ref(), &ring, &alg.untwist(&x)?) })
        }
        CrystalOp::CheckMonomial { check_radius, sample, .. } => {
            let holds = gradedgrowth::hecke::crystal_monomial_check(&alg, *check_radius, *sample, ctx.seed)?;
            json!({ "monomial": holds, "checked_radius": check_radius, "sample": sample })
        }
    };
    let mut out = base;
    if let (Value::Object(m), Value::Object(e)) = (&mut out, extra) {
        m.extend(e);
    }
    Ok(out)
}

const MAX_RESAMPLES: usize = 1000;

fn rs_check(a: &crate::RsArgs, ctx: &Context) -> Result<Report> {
    let f = finite_group(ctx, &a.group)?;
    let alg = build_group_algebra_with_cap(Arc::new(f), a.p, ctx.cap(DEFAULT_MAX_ORDER))?;
    let fp = alg.fp();
    let n = alg.dim();
    let s = generator_elements(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut trials = Vec::new();
    let (mut all_equal, mut all_bounds) = (true, true);
    for _ in 0..a.ideals {
        // random right ideals generated by one or two vectors, redrawn while 1 ∈ I
        let mut ideal = None;
        for _ in 0..MAX_RESAMPLES {
            let count = rng.gen_range(1..=2);
            let gens: Vec<_> = (0..count)
                .map(|_| fp.from_entries(&(0..n).map(|_| rng.gen_range(0..a.p)).collect::<Vec<u32>>()))
                .collect();
            let i = alg.right_ideal(&gens)?;
            if !i.contains(&alg.identity()) {
                ideal = Some(i);
                break;
            }
        }
        let i = ideal.ok_or_else(|| Error::SearchFailed(format!("every sampled ideal contained 1 after {MAX_RESAMPLES} draws")))?;
        let gens = rs_generators(&alg, &i, &s)?;
        let j = alg.right_ideal(&gens)?;
        let equal = j.rank() == i.rank() && i.contains_subspace(&j);
        let bound = rs_step_bound(&alg, &i, &s)?;
        all_equal &= equal;
        all_bounds &= bound.holds;
        trials.push(json!({ "dim": i.rank(), "generators": gens.len(), "generated_dim": j.rank(), "equal": equal, "step_bound": bound }));
    }
    let mut r = ctx.json(json!({
        "group": a.group,
        "p": a.p,
        "all_equal": all_equal,
        "all_bounds_hold": all_bounds,
        "trials": trials,
    }))?;
    if !(all_equal && all_bounds) {
        r.code = 4;
    }
    Ok(r)
}

fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad degree {x:?}")));
        match t.split_once("..") {
            Some((lo, hi)) => out.extend(num(lo)?..=num(hi)?),
            None => out.push(num(t)?),
        }
    }
    Ok(out)
}

fn gs(a: &crate::GsArgs, ctx: &Context) -> Result<Report> {
    let mut pres = match (&a.presentation, a.d, &a.degrees) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let p = Presentation::from_json(&text)?;
            let prime = a.p.ok_or_else(|| Error::Parse("--p is needed to compute relator degrees".into()))?;
            let symbols: String = p.generators.concat();
            let mut relators = p.relators.clone();
            relators.extend(p.involutions.iter().map(|x| format!("{x}{x}")));
            GsPresentation {
                d: p.generators.len() as u32,
                degrees: relator_degrees(&relators, &symbols, prime, a.max_deg)?,
                p: Some(prime),
                tail_bound: None,
            }
        }
        (None, Some(d), Some(degrees)) => {
            let mut g = GsPresentation::new(d, &parse_degrees(degrees)?);
            g.p = a.p;
            g
        }
        _ => return Err(Error::Parse("give --presentation, or --d with --degrees".into())),
    };
    pres.tail_bound = a.tail_bound.as_deref().map(parse_rational).transpose()?;
    // positions whose degree is only a lower bound, echoed when assumed
    let truncated: Vec<usize> =
        pres.degrees.iter().enumerate().filter(|(_, d)| matches!(d, Degree::Above(_))).map(|(i, _)| i).collect();
    if a.assume_min_degree {
        pres = pres.assume_min_degree();
    }
    let cert = gs_certificate(&pres, a.grid)?;
    let mut body = cert.to_json(pres.d, pres.p);
    if a.assume_min_degree && !truncated.is_empty() {
        body["assumed_min_degree"] = json!(truncated);
    }
    ctx.json(body)
}

fn verify(a: &crate::VerifyArgs, ctx: &Context) -> Result<Report> {
    let path = &a.certificate;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    let (kind, failures) = if v.get("is_GS").is_some() {
        let ok = verify_certificate(&v)?;
        ("gs", if ok { Vec::new() } else { vec!["recomputed value or verdict differs".to_string()] })
    } else if v.get("transversal").is_some() {
        let name = match &a.group {
            Some(n) => n.clone(),
            None => v["group"]
                .as_str()
                .ok_or_else(|| Error::Parse("certificate names no group; pass --group".into()))?
                .to_string(),
        };
        ("tiling", verify_tiling_certificate(ctx.group(&name)?, &v)?.failures)
    } else if v.get("experimental").is_some() {
        return Err(Error::Contract("probe reports record observations and are not certificates".into()));
    } else {
        return Err(Error::Parse("not a GS or tiling certificate".into()));
    };
    let valid = failures.is_empty();
    let mut r = ctx.json(json!({ "kind": kind, "valid": valid, "failures": failures }))?;
    if !valid {
        r.code = 4;
    }
    Ok(r)
}
