use std::fs;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::specs::{self, num, yes};
use super::{
    BoundsArgs, CknArgs, CliError, CompareArgs, CostaArgs, Equation, FormsArgs, Globals, GrowthArgs, HardyArgs, MonoArgs,
    Outcome, SolveArgs, SystemArgs, Target,
};
use crate::comparison::{ComparisonCase, ComparisonError, Theorem, Tolerances};
use crate::duality::{reverse, sup_distance, transform};
use crate::energy::{check_monotonicity, lambda_exponent, vanishing_test, BallEnergy, FKind, LambdaQuery};
use crate::forms::{condition_w_report, PolyForm, Q};
use crate::growth::{GrowthProfile, GrowthVerdict};
use crate::inequalities::{
    ckn_constant, costa_constant, hardy_constant, near_sharpness_search, random_ckn_scenario, verify_ckn, verify_hardy,
    CknCondition, CknScenario, CostaCase, HardyScenario, MarginReport,
};
use crate::model::{bound_catalog, geometric_grid, verify_bounds, BoundTarget, ModelError};
use crate::ode::{solve_jacobi, solve_riccati, SolverOptions};
use crate::radial::RadialExpr;

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn tolerances(g: &Globals) -> Tolerances {
    Tolerances { hypothesis: g.tol, conclusion: g.tol, residual: g.tol }
}

pub fn solve(g: &Globals, a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let s = &a.system;
    let coef = specs::coefficient(&s.coef)?;
    let opts = SolverOptions::default();
    let mut w = csv::Writer::from_writer(&mut *out);
    match a.eq {
        Equation::Jacobi => {
            let sol = solve_jacobi(coef, s.kappa, s.tmax, &opts).map_err(CliError::domain)?;
            let last = *sol.grid().last().expect("solution has nodes");
            w.write_record(["t", "f", "fprime"])?;
            for t in linspace(sol.epsilon(), last, g.grid) {
                let (f, fp) = (sol.f_at(t).map_err(CliError::domain)?, sol.fprime_at(t).map_err(CliError::domain)?);
                w.write_record([num(t), num(f), num(fp)])?;
            }
            writeln!(err, "t_sup={} residual={}", num(sol.t_sup()), num(sol.residual().max_abs()))?;
        }
        Equation::Riccati => {
            let sol = solve_riccati(coef, s.kappa, s.tmax, &opts).map_err(CliError::domain)?;
            let last = *sol.grid().last().expect("solution has nodes");
            w.write_record(["t", "g"])?;
            for t in linspace(sol.epsilon(), last, g.grid) {
                w.write_record([num(t), num(sol.g_at(t).map_err(CliError::domain)?)])?;
            }
            let pole = sol.pole().map_or("none".to_string(), num);
            writeln!(err, "t_sup={} pole={pole} residual={}", num(sol.t_sup()), num(sol.residual().max_abs()))?;
        }
    }
    w.flush()?;
    Ok(Outcome::Pass)
}

pub fn dual(g: &Globals, s: &SystemArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let coef = specs::coefficient(&s.coef)?;
    let f = solve_jacobi(coef, s.kappa, s.tmax, &SolverOptions::default()).map_err(CliError::domain)?;
    let back = reverse(&transform(&f).map_err(CliError::domain)?).map_err(CliError::domain)?;
    let (lo, hi) = (2.0 * f.epsilon(), 0.9 * f.t_sup());
    let e = sup_distance(&f, &back, lo, hi).map_err(CliError::domain)?;
    let ok = e <= g.tol;
    writeln!(out, "t_sup={}", num(f.t_sup()))?;
    writeln!(out, "window={},{}", num(lo), num(hi))?;
    writeln!(out, "sup_error={}", num(e))?;
    writeln!(out, "verdict={}", if ok { "pass" } else { "fail" })?;
    Ok(Outcome::from_pass(ok))
}

fn theorem(name: &str) -> Result<Theorem, CliError> {
    let t = Theorem::from_str(name).map_err(CliError::Usage)?;
    if t == Theorem::ModelBound {
        return Err(CliError::Usage("model bounds are certified by `bounds --model`".into()));
    }
    Ok(t)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("compare needs --{flag}")))
}

pub fn compare(g: &Globals, a: &CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let tol = tolerances(g);
    let opts = SolverOptions::default();
    if let Some(count) = a.random {
        return compare_random(g, a, count, out);
    }
    let th = theorem(a.theorem.as_deref().ok_or_else(|| CliError::Usage("compare needs --theorem".into()))?)?;
    let case = ComparisonCase {
        theorem: th,
        coef1: specs::coefficient(required(&a.coef1, "coef1")?)?,
        coef2: specs::coefficient(required(&a.coef2, "coef2")?)?,
        kappa: (a.kappa1, a.kappa2),
        t_end: a.tmax,
    };
    let cert = match case.run(&tol, &opts) {
        Ok(c) => c,
        Err(ComparisonError::HypothesisViolated { radius, margin }) => {
            writeln!(out, "verdict=hypothesis-violated radius={} margin={}", num(radius), num(margin))?;
            writeln!(err, "verification failed: G1 >= G2 does not hold")?;
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(CliError::domain(e)),
    };
    cert.write_record(&mut *out)?;
    let mut paths = Vec::new();
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir)?;
        let rec = dir.join(format!("{th}.cert"));
        let table = dir.join(format!("{th}.csv"));
        cert.write_record(fs::File::create(&rec)?)?;
        cert.write_csv(fs::File::create(&table)?)?;
        for p in [rec, table] {
            writeln!(out, "certificate={}", p.display())?;
            paths.push(p.display().to_string());
        }
    }
    if !cert.passed() {
        let where_ = if paths.is_empty() { "not saved (pass --out-dir)".to_string() } else { paths.join(", ") };
        writeln!(err, "verification failed; certificate: {where_}")?;
    }
    Ok(Outcome::from_pass(cert.passed()))
}

fn compare_random(g: &Globals, a: &CompareArgs, count: usize, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let fixed = a.theorem.as_deref().map(theorem).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let cases: Vec<ComparisonCase> =
        (0..count).map(|i| ComparisonCase::random(&mut rng, fixed.unwrap_or(Theorem::ALL[i % 4]), a.violate)).collect();
    let (tol, opts) = (tolerances(g), SolverOptions::default());
    let results: Vec<_> = cases.par_iter().map(|c| c.run(&tol, &opts)).collect();
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(["case", "theorem", "outcome", "min_margin"])?;
    let mut all_ok = true;
    for (i, (c, r)) in cases.iter().zip(&results).enumerate() {
        let (outcome, margin, ok) = match r {
            Ok(cert) => {
                let ok = !a.violate && cert.passed() && cert.min_margin() >= -g.tol;
                (if cert.passed() { "pass" } else { "fail" }, num(cert.min_margin()), ok)
            }
            Err(ComparisonError::HypothesisViolated { margin, .. }) => ("hypothesis-violated", num(*margin), a.violate),
            Err(e) => ("error", e.to_string(), false),
        };
        all_ok &= ok;
        w.write_record([i.to_string(), c.theorem.to_string(), outcome.to_string(), margin])?;
    }
    w.flush()?;
    Ok(Outcome::from_pass(all_ok))
}

pub fn bounds(g: &Globals, a: &BoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let h = specs::hypothesis(&a.hyp, &a.shape)?;
    let want = match a.target {
        Target::Hessian => BoundTarget::HessianEigenvalue,
        Target::Laplacian => BoundTarget::Laplacian,
        Target::MeanCurvature => BoundTarget::MeanCurvature,
    };
    let pair = bound_catalog(&h, a.n)
        .map_err(CliError::domain)?
        .into_iter()
        .find(|p| p.applies_to == want)
        .ok_or_else(|| CliError::Usage(format!("`{}` gives no {want} bound", a.hyp)))?;
    if !(a.rmax > 0.0) {
        return Err(CliError::Usage(format!("--rmax must be positive, got {}", a.rmax)));
    }
    let radii: Vec<f64> = (1..=g.grid).map(|i| a.rmax * i as f64 / g.grid as f64).collect();
    let Some(spec) = &a.model else {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(["r", "lower", "upper"])?;
        let cell = |v: Option<f64>| v.map_or(String::new(), num);
        for &r in &radii {
            let (lo, hi) = pair.eval(r).map_err(CliError::domain)?;
            w.write_record([num(r), cell(lo), cell(hi)])?;
        }
        w.flush()?;
        return Ok(Outcome::Pass);
    };
    let m = specs::model(spec, a.n, a.rmax)?;
    let value = match a.target {
        Target::Hessian => m.hess_eigenvalue(),
        Target::Laplacian => m.laplacian_r(),
        Target::MeanCurvature => m.mean_curvature(),
    };
    pair.write_table(&value, &radii, &mut *out)?;
    match verify_bounds(&m, &h, &tolerances(g), g.grid) {
        Ok(cert) => {
            cert.write_record(&mut *err)?;
            Ok(Outcome::from_pass(cert.passed()))
        }
        Err(ModelError::Comparison(ComparisonError::HypothesisViolated { radius, margin })) => {
            writeln!(err, "verification failed: model violates {} at r = {} (margin {})", a.hyp, num(radius), num(margin))?;
            Ok(Outcome::Fail)
        }
        Err(e) => Err(CliError::domain(e)),
    }
}

pub fn growth(g: &Globals, a: &GrowthArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut profiles = Vec::new();
    for text in &a.profiles {
        let v = specs::numbers(text)?;
        let [c, alpha, beta] = v[..] else {
            return Err(CliError::Usage(format!("profile `{text}` is not c,alpha,beta")));
        };
        profiles.push(GrowthProfile::new(a.p, c, alpha, beta).map_err(CliError::domain)?);
    }
    if let Some(count) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        for _ in 0..count {
            let c: f64 = rng.random_range(0.1..10.0);
            let (alpha, beta) = (rng.random_range(f64::MIN_POSITIVE..2.0 * a.p), rng.random_range(-3.0..3.0));
            profiles.push(GrowthProfile::new(a.p, c, alpha, beta).map_err(CliError::domain)?);
        }
    }
    let mut w = csv::Writer::from_writer(&mut *out);
    let mut header = vec!["p", "c", "alpha", "beta"];
    header.extend(GrowthVerdict::HEADER);
    w.write_record(&header)?;
    let mut broken = 0usize;
    for pr in &profiles {
        let v = pr.classify();
        broken += usize::from(!v.chain_holds());
        let mut row = vec![num(pr.p), num(pr.c), num(pr.alpha), num(pr.beta)];
        row.extend(v.flags().iter().map(|&b| yes(b).to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    if broken > 0 {
        writeln!(err, "verification failed: {broken} profiles break moderate <=> small => mild => obtuse")?;
    }
    Ok(Outcome::from_pass(broken == 0))
}

fn sample_points(g: &Globals, n: usize) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    (0..g.grid)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let den: i64 = rng.random_range(1..=8);
                    Q::new(BigInt::from(rng.random_range(-2 * den..=2 * den)), BigInt::from(den))
                })
                .collect()
        })
        .collect()
}

pub fn forms(g: &Globals, a: &FormsArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    for text in &a.forms {
        let n = a.n.unwrap_or_else(|| specs::max_index(text).max(1));
        let form = PolyForm::parse(n, text).map_err(CliError::domain)?;
        let c = form.classify();
        writeln!(out, "form={form}")?;
        writeln!(out, "closed={} coclosed={} harmonic={}", yes(c.closed), yes(c.coclosed), yes(c.harmonic))?;
        let w = condition_w_report(&form, &sample_points(g, n)).map_err(CliError::domain)?;
        writeln!(
            out,
            "condition_w={} samples={} worst={}<={} worst_dual={}<={}",
            yes(w.holds_at_all_samples),
            g.grid,
            w.worst.lhs,
            w.worst.rhs,
            w.worst_dual.lhs,
            w.worst_dual.rhs
        )?;
    }
    Ok(Outcome::Pass)
}

fn margin_table<'a>(out: &mut dyn Write, rows: impl IntoIterator<Item = (String, &'a MarginReport)>) -> Result<bool, CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["id", "C", "lhs", "rhs", "slack", "verdict"])?;
    let mut ok = true;
    for (id, m) in rows {
        ok &= m.passed;
        w.write_record([id, num(m.constant), num(m.lhs), num(m.rhs), num(m.slack), (if m.passed { "pass" } else { "fail" }).into()])?;
    }
    w.flush()?;
    Ok(ok)
}

pub fn ckn(g: &Globals, a: &CknArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (wa, wb) = (a.weight_a, a.weight_b);
    if let Some(count) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let cases = (0..count).map(|_| random_ckn_scenario(&mut rng)).collect::<Result<Vec<_>, _>>().map_err(CliError::domain)?;
        let reports = cases.par_iter().map(|(s, c)| verify_ckn(s, c)).collect::<Result<Vec<_>, _>>().map_err(CliError::domain)?;
        let ok = margin_table(out, cases.iter().zip(&reports).enumerate().map(|(i, ((_, c), m))| (format!("{i}:{c}"), m)))?;
        return Ok(Outcome::from_pass(ok));
    }
    if a.all {
        let s = &a.shape;
        let rows = CknCondition::all_rows(
            s.big_a.unwrap_or(1.0),
            s.big_a1.unwrap_or(1.0),
            s.big_b.unwrap_or(0.0),
            s.big_b1.unwrap_or(0.0),
            s.shift.unwrap_or(1.0),
        );
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(["row", "constant", "status"])?;
        for c in rows {
            let (value, status) = match ckn_constant(&c, wa, wb, a.n) {
                Ok(v) => (num(v), "ok".to_string()),
                Err(e) => (String::new(), e.to_string()),
            };
            w.write_record([c.to_string(), value, status])?;
        }
        w.flush()?;
        return Ok(Outcome::Pass);
    }
    let name = a.cond.as_deref().ok_or_else(|| CliError::Usage("ckn needs --cond, --all or --random".into()))?;
    let cond = specs::ckn_condition(name, &a.shape)?;
    let constant = ckn_constant(&cond, wa, wb, a.n).map_err(CliError::domain)?;
    let Some(spec) = &a.model else {
        writeln!(out, "row={cond}")?;
        writeln!(out, "constant={}", num(constant))?;
        return Ok(Outcome::Pass);
    };
    let m = specs::model(spec, a.n, 1.5 * a.r2)?;
    if a.sharpness {
        let (ratio, inner, q) = near_sharpness_search(&m, wa, wb, a.r2).map_err(CliError::domain)?;
        writeln!(out, "constant={}", num(constant))?;
        writeln!(out, "best_ratio={} inner_ratio={} q={}", num(ratio), num(inner), num(q))?;
        writeln!(out, "ratio_over_constant={}", num(ratio / constant))?;
        return Ok(Outcome::from_pass(ratio >= constant * (1.0 - g.tol)));
    }
    let s = CknScenario::with_bump(m, wa, wb, a.r1, a.r2, a.p, a.q).map_err(CliError::domain)?;
    let rep = verify_ckn(&s, &cond).map_err(CliError::domain)?;
    Ok(Outcome::from_pass(margin_table(out, [("cli".to_string(), &rep)])?))
}

pub fn hardy(g: &Globals, a: &HardyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if let Some(count) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let cases = (0..count).map(|_| HardyScenario::random(&mut rng)).collect::<Result<Vec<_>, _>>().map_err(CliError::domain)?;
        let reports = cases.par_iter().map(verify_hardy).collect::<Result<Vec<_>, _>>().map_err(CliError::domain)?;
        let ok = margin_table(out, reports.iter().enumerate().map(|(i, m)| (i.to_string(), m)))?;
        return Ok(Outcome::from_pass(ok));
    }
    let p = a.p.ok_or_else(|| CliError::Usage("hardy needs --p or --random".into()))?;
    let constant = hardy_constant(p, a.n, a.big_a).map_err(CliError::domain)?;
    let Some(spec) = &a.model else {
        writeln!(out, "constant={}", num(constant))?;
        return Ok(Outcome::Pass);
    };
    let m = specs::model(spec, a.n, 1.5 * a.cutoff)?;
    let s = HardyScenario::new(m, p, a.s, a.big_a, a.cutoff).map_err(CliError::domain)?;
    let rep = verify_hardy(&s).map_err(CliError::domain)?;
    Ok(Outcome::from_pass(margin_table(out, [("cli".to_string(), &rep)])?))
}

pub fn costa(a: &CostaArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let cases = match &a.case {
        Some(c) => vec![CostaCase::from_str(c).map_err(CliError::domain)?],
        None => CostaCase::ALL.to_vec(),
    };
    let conds = match &a.cond {
        Some(name) => vec![specs::ckn_condition(name, &a.shape)?],
        None => {
            let s = &a.shape;
            CknCondition::all_rows(
                s.big_a.unwrap_or(1.0),
                s.big_a1.unwrap_or(1.0),
                s.big_b.unwrap_or(0.0),
                s.big_b1.unwrap_or(0.0),
                s.shift.unwrap_or(1.0),
            )
            .into_iter()
            .filter(|c| c.row().0 != "sign")
            .collect()
        }
    };
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(["case", "a", "b", "row", "constant", "status"])?;
    for case in &cases {
        let (wa, wb) = case.weights(a.free);
        for cond in &conds {
            let (value, status) = match costa_constant(*case, a.free, cond, a.n) {
                Ok(v) => (num(v), "ok".to_string()),
                Err(e) => (String::new(), e.to_string()),
            };
            w.write_record([case.label().to_string(), num(wa), num(wb), cond.to_string(), value, status])?;
        }
    }
    w.flush()?;
    Ok(Outcome::Pass)
}

pub fn mono(g: &Globals, a: &MonoArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let row = specs::lambda_row(&a.row, &a.shape)?;
    let fk = FKind::from_str(&a.f_kind).map_err(CliError::domain)?;
    let d_f = fk.f_degree().map_err(CliError::domain)?;
    let q = LambdaQuery::new(row, a.k, d_f, a.n);
    let lambda = match lambda_exponent(&q) {
        Ok(l) => l,
        Err(e) => {
            writeln!(out, "lambda={} applicable=no", q.master())?;
            writeln!(err, "verification failed: {e}")?;
            return Ok(Outcome::Fail);
        }
    };
    writeln!(out, "lambda={lambda}")?;
    let Some(text) = &a.energy else {
        return Ok(Outcome::Pass);
    };
    let v = specs::numbers(text)?;
    let [c, alpha, beta] = v[..] else {
        return Err(CliError::Usage(format!("energy `{text}` is not c,alpha,beta")));
    };
    let e = BallEnergy(RadialExpr::power_log(c, alpha, beta));
    let rep = check_monotonicity(&e, lambda, &geometric_grid(1e-2, 1e2, g.grid)).map_err(CliError::domain)?;
    let worst = rep.worst.map_or("none".to_string(), |(r1, r2, d)| format!("{},{},{}", num(r1), num(r2), num(d)));
    writeln!(out, "monotone={} worst_drop={worst}", yes(rep.passed))?;
    let van = vanishing_test(c, alpha, beta, lambda);
    let contra = van.contradiction.map_or("none".to_string(), |(r1, r2)| format!("{},{}", num(r1), num(r2)));
    writeln!(out, "little_o={} contradiction={contra}", yes(van.little_o))?;
    Ok(Outcome::from_pass(rep.passed))
}
