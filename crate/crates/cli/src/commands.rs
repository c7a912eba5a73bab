use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use log::info;
use serde::Deserialize;
use twinrank_core::certify::{default_good_primes, modp_torsion_bound};
use twinrank_core::eccore::{LegendreCurve, QuarticCurve, TwistedCurve, WeierstrassCurve};
use twinrank_core::families::pair::Q_ALPHA;
use twinrank_core::families::{
    aux_symbolic_checks, generate_twists, legendre_cubic, lemma31_pair_criterion, lemma41_construct, recheck_record,
    remark52_pipeline, FamilyId, IdentityCheck, PipelineInput, PipelineReport, TwistRecord,
};
use twinrank_core::symalg::factor::{rational_square_free, FactorBudget};
use twinrank_core::symalg::parse::parse_call;
use twinrank_core::symalg::rat::{rat_sqrt_exact, rat_to_string};
use twinrank_core::symalg::{parse_constant, parse_expr, parse_poly, FracLinMap, RatFunc, Var};
use twinrank_core::Rat;

use crate::config::RunConfig;
use crate::output::{csv_path, write_line, write_summary, CertificateFile, Header};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failed,
}

/// Which suites `verify-identities` runs. `None` runs both shipped families.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub family: Option<FamilyId>,
    /// A custom pipeline description instead of the shipped families.
    pub pipeline: Option<std::path::PathBuf>,
    /// Test mode: scale the `y` of point `k` (1-based) of a family by `1001/1000`.
    pub perturb: Option<(FamilyId, usize)>,
}

/// Parses `thm51:P1`.
pub fn parse_perturbation(s: &str) -> anyhow::Result<(FamilyId, usize)> {
    let (fam, point) = s.split_once(':').ok_or_else(|| anyhow!("expected FAMILY:Pk, got {s:?}"))?;
    let k: usize = point
        .strip_prefix('P')
        .and_then(|k| k.parse().ok())
        .filter(|k| (1..=4).contains(k))
        .ok_or_else(|| anyhow!("point must be P1..P4, got {point:?}"))?;
    Ok((fam.parse()?, k))
}

struct Tally<'a, W: Write> {
    out: &'a mut W,
    failed: usize,
}

impl<W: Write> Tally<'_, W> {
    fn check(&mut self, name: &str, passed: bool) -> anyhow::Result<()> {
        if !passed {
            self.failed += 1;
        }
        writeln!(self.out, "{}  {name}", if passed { "PASS" } else { "FAIL" })?;
        Ok(())
    }

    fn checks(&mut self, checks: &[IdentityCheck]) -> anyhow::Result<()> {
        for c in checks {
            self.check(&c.name, c.passed)?;
        }
        Ok(())
    }

    fn note(&mut self, line: &str) -> anyhow::Result<()> {
        writeln!(self.out, "      {line}")?;
        Ok(())
    }

    fn pipeline(&mut self, label: &str, r: &PipelineReport) -> anyhow::Result<()> {
        for i in 0..2 {
            self.check(&format!("{label}: k{} = f{}(a0)(z + delta) mod squares", i + 1, i + 1), r.k_matches_linear_form[i])?;
        }
        if let Some(k) = r.k_matches_printed {
            for (i, ok) in k.iter().enumerate() {
                self.check(&format!("{label}: k{} = l{}((1 + l{}) z - l{}) mod squares", i + 1, i + 1, i + 1, i + 1), *ok)?;
            }
        }
        self.check(&format!("{label}: f2(z) = T^2 f1(z)"), r.relation_holds)?;
        if let Some(c) = r.c_equations {
            for (i, ok) in c.iter().enumerate() {
                self.check(&format!("{label}: C-point equation {}", i + 1), *ok)?;
            }
        }
        if let Some(g) = r.matches_g {
            self.check(&format!("{label}: f1(z(t)) = g mod squares"), g)?;
        }
        self.note(&format!("{label}: twist kernel {}", r.twist_kernel))
    }
}

const LEMMA_SAMPLES: [(i64, i64, i64, i64); 4] = [(2, 1, 3, 1), (3, 1, -5, 1), (-25, 9, 25, 16), (34, 9, -9, 16)];

pub fn verify_identities<W: Write>(opts: &VerifyOptions, out: &mut W) -> anyhow::Result<Outcome> {
    let mut t = Tally { out, failed: 0 };
    if let Some(path) = &opts.pipeline {
        let spec = CustomPipeline::load(path)?;
        let report = remark52_pipeline(&spec.input()?)?;
        t.pipeline("custom pipeline", &report)?;
        return Ok(if t.failed == 0 { Outcome::Success } else { Outcome::Failed });
    }

    for (n1, d1, n2, d2) in LEMMA_SAMPLES {
        let (l1, l2) = (Rat::new(n1.into(), d1.into()), Rat::new(n2.into(), d2.into()));
        let label = format!("pair ({}, {})", rat_to_string(&l1), rat_to_string(&l2));
        let p = lemma41_construct(&l1, &l2)?;
        let res = p.residuals()?;
        t.check(&format!("{label}: P1 on E1^g"), res[0].is_zero())?;
        t.check(&format!("{label}: P2 on E2^g"), res[1].is_zero())?;
        let crit = lemma31_pair_criterion(&legendre_cubic(&l1), &legendre_cubic(&l2), &p.x, &p.x, &RatFunc::var(Var::U))?;
        t.check(&format!("{label}: f2(x(u)) = u^2 f1(x(u))"), crit)?;
        t.note(&format!("genus_bound {label}: deg g = {} -> {}", p.g.degree(Var::U), p.genus_bound))?;
    }

    t.checks(&aux_symbolic_checks()?)?;

    let ids: Vec<FamilyId> = match opts.family {
        Some(id) => vec![id],
        None => vec![FamilyId::Thm51, FamilyId::Thm53],
    };
    for id in ids {
        let family = id.build(None)?;
        let mut checked = family.clone();
        if let Some((pid, k)) = opts.perturb {
            if pid == id {
                let p = &mut checked.points[k - 1];
                p.y = p.y.scale(&RatFunc::constant(Rat::new(1001.into(), 1000.into())));
            }
        }
        t.checks(&checked.identity_checks()?)?;
        t.note(&format!("genus_bound {id}: deg g = {} -> {}", family.g.degree(Var::T), family.genus_bound()?))?;
        let report = remark52_pipeline(&PipelineInput::for_family(&family)?)?;
        t.pipeline(&format!("{id} pipeline"), &report)?;
    }
    let failed = t.failed;
    writeln!(t.out, "{}", if failed == 0 { "all identities hold".to_string() } else { format!("{failed} identities FAILED") })?;
    Ok(if failed == 0 { Outcome::Success } else { Outcome::Failed })
}

/// Pipeline inputs as expressions: `lambda1`, `lambda2` in alpha, `h1`, `h2` in `z`, `t` for `T(t)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomPipeline {
    pub lambda1: String,
    pub lambda2: String,
    pub h1: String,
    pub h2: String,
    pub t: String,
    /// Expected twist polynomial in `t`, compared modulo squares.
    pub g: Option<String>,
}

impl CustomPipeline {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn input(&self) -> anyhow::Result<PipelineInput> {
        let h = |s: &str| -> anyhow::Result<FracLinMap> { Ok(FracLinMap::from_ratfunc(&parse_expr(s)?, Var::Z)?) };
        Ok(PipelineInput {
            lambda1: parse_expr(&self.lambda1)?,
            lambda2: parse_expr(&self.lambda2)?,
            h1: h(&self.h1)?,
            h2: h(&self.h2)?,
            t_expr: parse_expr(&self.t)?,
            modulus: std::sync::Arc::new(parse_poly(Q_ALPHA)?),
            k_printed: None,
            c_point: None,
            g_expected: self.g.as_deref().map(parse_poly).transpose()?,
        })
    }
}

pub fn generate(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    cfg.validate()?;
    let alpha_src = cfg.alpha.as_deref().ok_or_else(|| anyhow!("--alpha is required"))?;
    let alpha = parse_constant(alpha_src)?;
    let stream = generate_twists(&alpha, cfg.count, &cfg.generate())?;
    let header = Header::new(cfg, &rat_to_string(&alpha));
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(std::io::stdout().lock()),
    };
    write_line(&mut sink, &header)?;
    let mut records: Vec<TwistRecord> = Vec::new();
    for rec in stream {
        let rec = rec?;
        info!("record {}: t = {}, d = {}", records.len() + 1, rec.t, rec.d_squarefree);
        write_line(&mut sink, &rec)?;
        records.push(rec);
    }
    drop(sink);
    if let (Some(p), true) = (&cfg.out, cfg.csv) {
        let path = csv_path(p);
        write_summary(File::create(&path).with_context(|| format!("creating {}", path.display()))?, &records)?;
    }
    if records.len() < cfg.count {
        eprintln!("only {} of {} records certified within {} walk points", records.len(), cfg.count, cfg.max_candidates);
        return Ok(Outcome::Failed);
    }
    Ok(Outcome::Success)
}

pub fn recheck<W: Write>(path: &Path, heights: bool, out: &mut W) -> anyhow::Result<Outcome> {
    let file = match CertificateFile::read(path) {
        Ok(f) => f,
        Err(e) => {
            writeln!(out, "FAIL  schema violation: {e:#}")?;
            return Ok(Outcome::Failed);
        }
    };
    let cfg = file.header.config.certify();
    let mut failed = 0;
    for (i, rec) in file.records.iter().enumerate() {
        let mut problems = recheck_record(rec, &cfg, heights)?;
        if rec.family != file.header.family {
            problems.push(format!("family {} differs from the header", rec.family));
        }
        let dup = file.records[..i]
            .iter()
            .any(|p| p.reduction_complete && rec.reduction_complete && p.d_squarefree == rec.d_squarefree);
        if dup {
            problems.push("d_squarefree repeats an earlier record".into());
        }
        let label = format!("record {} (t = {})", i + 1, rat_to_string(&rec.t));
        if problems.is_empty() {
            writeln!(out, "PASS  {label}")?;
        } else {
            failed += 1;
            writeln!(out, "FAIL  {label}: {}", problems.join("; "))?;
        }
    }
    writeln!(out, "{} of {} records reproduce", file.records.len() - failed, file.records.len())?;
    Ok(if failed == 0 { Outcome::Success } else { Outcome::Failed })
}

fn constants(args: &[RatFunc]) -> anyhow::Result<Vec<Rat>> {
    args.iter().map(|a| a.as_constant().ok_or_else(|| anyhow!("argument {a} is not a rational constant"))).collect()
}

fn square_class(r: &Rat) -> anyhow::Result<String> {
    let (k, _) = rational_square_free(std::slice::from_ref(r), &FactorBudget::default())?;
    Ok(if k.complete { k.kernel.to_string() } else { format!("{} (not proven square-free)", k.kernel) })
}

fn describe_weierstrass<W: Write>(e: &WeierstrassCurve, out: &mut W) -> anyhow::Result<()> {
    let disc = e.discriminant();
    writeln!(out, "model: {e}")?;
    writeln!(out, "discriminant: {}", rat_to_string(&disc))?;
    writeln!(out, "j-invariant: {}", rat_to_string(&e.j_invariant()?))?;
    writeln!(out, "discriminant square class: {}", square_class(&disc)?)?;
    let bound = modp_torsion_bound(e, &default_good_primes(e, 3))?;
    let counts: Vec<String> = bound.counts.iter().map(|(p, n)| format!("#E(F_{p}) = {n}")).collect();
    writeln!(out, "torsion order divides {} ({})", bound.bound, counts.join(", "))?;
    writeln!(out, "twists: E^d is isomorphic to E^d' over Q iff d/d' is a square")?;
    Ok(())
}

pub fn inspect<W: Write>(expr: &str, out: &mut W) -> anyhow::Result<()> {
    let (name, args) = parse_call(expr)?;
    match (name.as_str(), args.len()) {
        ("legendre", 1 | 2) => {
            let c = constants(&args)?;
            let e = LegendreCurve::new(c[0].clone())?;
            let orbit: Vec<String> = e.orbit().iter().map(rat_to_string).collect();
            writeln!(out, "legendre lambda = {}", rat_to_string(e.lambda()))?;
            writeln!(out, "legendre orbit: {{{}}}", orbit.join(", "))?;
            match c.get(1) {
                Some(d) => {
                    let tw = TwistedCurve::from_legendre(&e, d)?;
                    writeln!(out, "twist d = {}, square class {}", rat_to_string(d), square_class(d)?)?;
                    describe_weierstrass(&tw.weierstrass(), out)?;
                }
                None => describe_weierstrass(&e.weierstrass(), out)?,
            }
        }
        ("weierstrass", 2 | 5) => {
            let c = constants(&args)?;
            let e = if c.len() == 2 {
                WeierstrassCurve::short(c[0].clone(), c[1].clone())?
            } else {
                WeierstrassCurve::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone())?
            };
            describe_weierstrass(&e, out)?;
        }
        ("quartic", 5) => {
            let c = constants(&args)?;
            let q = QuarticCurve::new(c.try_into().expect("five coefficients"))?;
            let (i, j) = q.invariants();
            writeln!(out, "genus-one model: {q}")?;
            writeln!(out, "invariants: I = {}, J = {}", rat_to_string(&i), rat_to_string(&j))?;
            writeln!(out, "discriminant: {}", rat_to_string(&q.discriminant()))?;
            writeln!(out, "j-invariant: {}", rat_to_string(&q.j_invariant()?))?;
            match find_point(&q, 30) {
                Some((t, v)) => {
                    let map = q.to_weierstrass((&t, &v))?;
                    writeln!(out, "rational point: ({}, {}) maps to O", rat_to_string(&t), rat_to_string(&v))?;
                    writeln!(out, "weierstrass image:")?;
                    describe_weierstrass(&map.curve, out)?;
                }
                None => writeln!(out, "no rational point with t of height <= 30; no Weierstrass image")?,
            }
        }
        _ => bail!("expected legendre(l), legendre(l, d), weierstrass(a, b), weierstrass(a1, a2, a3, a4, a6) or quartic(c4, c3, c2, c1, c0), got {name} with {} arguments", args.len()),
    }
    Ok(())
}

/// A point with `t = p/q`, `max(|p|, q) <= bound`, smallest height first.
fn find_point(q: &QuarticCurve<Rat>, bound: i64) -> Option<(Rat, Rat)> {
    let zero = Rat::from_integer(0.into());
    for h in 0..=bound {
        for den in 1..=h.max(1) {
            for num in -h..=h {
                if num.abs().max(den) != h.max(1) && h > 0 {
                    continue;
                }
                let t = Rat::new(num.into(), den.into());
                if let Some(v) = rat_sqrt_exact(&q.eval(&t)) {
                    if v != zero {
                        return Some((t, v));
                    }
                }
            }
        }
    }
    None
}
