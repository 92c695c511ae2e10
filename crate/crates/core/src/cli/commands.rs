//! Subcommand bodies. Each returns the JSON report and the table behind
//! `--format csv`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::input::{CollectionSpec, InputError};
use super::report::{
    classify, ErrorBody, Genericity, Provenance, ProjectionRecord, Report, Table, Verdict, EXIT_USAGE,
};
use crate::betti::{is_linear_resolution, regularity};
use crate::check::{default_degree_bound, BoundSource, Hypothesis};
use crate::decomp::{ass_primes, gamma_decomposition, containment_bound_components, verify_decomposition, verify_containment_bound, verify_saturation};
use crate::error::AlgebraError;
use crate::fold::FoldIdeal;
use crate::linalg::{Field, Fp, Rational, Scalar};
use crate::poly::min_gen_degrees;
use crate::sigma::FormCollection;
use crate::star::{phi_transfer_check, MonomialStarModel, StarConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Gens { a: usize, bound: Option<usize> },
    Decompose { a: usize, bound: Option<usize> },
    Betti { a: usize, bound: Option<usize> },
    Ghw,
    Star { c: usize, m: usize, bound: Option<usize> },
    Resurgence { s: usize, c: usize, m_max: usize, r_max: usize, phi_max: usize, bound: Option<usize> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gens { .. } => "gens",
            Command::Decompose { .. } => "decompose",
            Command::Betti { .. } => "betti",
            Command::Ghw => "ghw",
            Command::Star { .. } => "star",
            Command::Resurgence { .. } => "resurgence",
        }
    }

    fn needs_spec(&self) -> bool {
        !matches!(self, Command::Resurgence { .. })
    }
}

/// A command that did not produce a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub path: Option<String>,
    pub exit_code: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: "usage", message: message.into(), path: None, exit_code: EXIT_USAGE }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody { kind: self.kind.into(), message: self.message.clone(), path: self.path.clone(), exit_code: self.exit_code }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let (exit_code, kind) = classify(&e);
        CliError { kind, message: e.to_string(), path: None, exit_code }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError { kind: "parse", message: e.to_string(), path: Some(e.path), exit_code: EXIT_USAGE }
    }
}

type Outcome = Result<(Report, Table), CliError>;

/// Runs `command` on `spec` (required for every command except `resurgence`).
pub fn execute(command: &Command, spec: Option<&CollectionSpec>, field_override: Option<Field>) -> Outcome {
    let spec = match (spec, command.needs_spec()) {
        (None, true) => return Err(CliError::usage(format!("`{}` needs a collection document", command.name()))),
        (s, _) => s,
    };
    let Some(spec) = spec else {
        return run::<Rational>(command, None, field_override);
    };
    match spec.field(field_override)? {
        f @ Field::Rational => run::<Rational>(command, Some(spec.build(f)?), Some(f)),
        f @ Field::Prime(_) => run::<Fp>(command, Some(spec.build(f)?), Some(f)),
    }
}

fn run<F: Scalar>(command: &Command, sigma: Option<FormCollection<F>>, field: Option<Field>) -> Outcome {
    let mut prov = Provenance::new(field.map(|f| f.to_string()));
    if let Some(s) = &sigma {
        prov.genericity = Some(Genericity::of(s));
    }
    let need = || sigma.clone().expect("checked by execute");
    let (parameters, results, verdicts, table) = match *command {
        Command::Gens { a, bound } => gens(&need(), a, bound, &mut prov)?,
        Command::Decompose { a, bound } => decompose(&need(), a, bound, &mut prov)?,
        Command::Betti { a, bound } => betti(&need(), a, bound, &mut prov)?,
        Command::Ghw => ghw(&need(), &mut prov)?,
        Command::Star { c, m, bound } => star(need(), c, m, bound, &mut prov)?,
        Command::Resurgence { s, c, m_max, r_max, phi_max, bound } => {
            resurgence(sigma.clone(), s, c, m_max, r_max, phi_max, bound, &mut prov)?
        }
    };
    let report = Report { command: command.name().into(), parameters, results, verdicts, provenance: prov };
    Ok((report, table))
}

type Parts = (BTreeMap<String, Value>, Value, Vec<Verdict>, Table);

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn resolve_bound(prov: &mut Provenance, name: &str, user: Option<usize>, default: usize) -> usize {
    match user {
        Some(b) => {
            prov.bound(name, b, BoundSource::User);
            b
        }
        None => {
            prov.bound(name, default, BoundSource::Default);
            default
        }
    }
}

fn check_a<F: Scalar>(sigma: &FormCollection<F>, a: usize) -> Result<(), CliError> {
    if a == 0 || a > sigma.total() {
        return Err(CliError::usage(format!("need 1 <= a <= N = {}, got a = {a}", sigma.total())));
    }
    Ok(())
}

fn gens<F: Scalar>(
    sigma: &FormCollection<F>,
    a: usize,
    bound: Option<usize>,
    prov: &mut Provenance,
) -> Result<Parts, CliError> {
    check_a(sigma, a)?;
    let ideal = FoldIdeal::new(sigma.clone(), a);
    let bound = resolve_bound(prov, "min_gen_degrees", bound, a);
    let degrees = min_gen_degrees(ideal.generators(), bound)?;
    let mut table = Table::new(&["index", "composition", "degree", "generator"]);
    let mut list = Vec::new();
    for (k, (t, p)) in ideal.compositions().iter().zip(ideal.generators().polys()).enumerate() {
        let comp = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        table.push(vec![k.to_string(), comp, a.to_string(), p.to_string()]);
        list.push(json!({ "composition": t, "degree": a, "generator": p.to_string() }));
    }
    let results = json!({
        "total_multiplicity": sigma.total(),
        "count": list.len(),
        "generators": list,
        "min_gen_degrees": degrees,
    });
    Ok((params(&[("a", json!(a))]), results, Vec::new(), table))
}

fn decompose<F: Scalar>(
    sigma: &FormCollection<F>,
    a: usize,
    bound: Option<usize>,
    prov: &mut Provenance,
) -> Result<Parts, CliError> {
    check_a(sigma, a)?;
    let nvars = sigma.nvars();
    let bound = resolve_bound(prov, "verification", bound, default_degree_bound(a, nvars));
    let hypothesis = Genericity::of(sigma).hypothesis();
    let mut verdicts = vec![Verdict::from_check("containment_bound", &verify_containment_bound(sigma, a, bound)?)];
    let mut skipped = Vec::new();
    let full_rank = sigma.rank() == nvars;
    if full_rank {
        verdicts.push(Verdict::from_check("decomposition_equality", &verify_decomposition(sigma, a, bound)?));
        verdicts.push(Verdict::from_check("saturation_equality", &verify_saturation(sigma, a, bound)?));
    } else {
        let (_, projection) = sigma.reembed()?;
        prov.projection = Some(ProjectionRecord::from(&projection));
        skipped.push("decomposition_equality and saturation_equality need rank = num_vars");
    }
    let (kind, decomposition) = if hypothesis == Hypothesis::Satisfied {
        ("primary", gamma_decomposition(sigma, a)?)
    } else {
        ("containment_bound", containment_bound_components(sigma, a)?)
    };
    let irredundant = if hypothesis == Hypothesis::Satisfied {
        Some(ass_primes(sigma, a, bound)?.irredundant)
    } else {
        None
    };
    let summary = decomposition.summary();
    let mut table = Table::new(&["support", "codim", "exponent", "maximal", "irredundant"]);
    for (k, c) in summary.iter().enumerate() {
        let support = c.support.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let irr = irredundant.as_ref().map_or(String::new(), |v| v[k].to_string());
        table.push(vec![support, c.codim.to_string(), c.exponent.to_string(), c.maximal.to_string(), irr]);
    }
    let results = json!({
        "kind": kind,
        "components": summary,
        "includes_maximal_ideal": decomposition.includes_m(),
        "height": decomposition.height(),
        "irredundant": irredundant,
        "skipped": skipped,
    });
    Ok((params(&[("a", json!(a))]), results, verdicts, table))
}

fn betti<F: Scalar>(
    sigma: &FormCollection<F>,
    a: usize,
    bound: Option<usize>,
    prov: &mut Provenance,
) -> Result<Parts, CliError> {
    check_a(sigma, a)?;
    let nvars = sigma.nvars();
    let bound = resolve_bound(prov, "koszul", bound, default_degree_bound(a, nvars));
    let ideal = FoldIdeal::new(sigma.clone(), a);
    let v = is_linear_resolution(ideal.generators(), bound)?;
    let reg = regularity(&v.table).ok();
    let hypothesis = Genericity::of(sigma).hypothesis();
    let verdicts = vec![
        Verdict {
            name: "linear_resolution".into(),
            holds: v.is_linear && v.certified,
            hypothesis,
            degree_bound: Some(bound),
            first_failure: None,
        },
        Verdict { degree_bound: Some(bound), ..Verdict::new("saturation_truncation", v.saturation_consistent, hypothesis) },
    ];
    let diagram = v.table.diagram();
    let width = diagram.first().map_or(0, |r| r.len());
    let mut header: Vec<String> = vec!["i".into()];
    header.extend((0..width).map(|k| format!("j-i={k}")));
    let mut table = Table { header, rows: Vec::new() };
    for (i, row) in diagram.iter().enumerate() {
        let mut r = vec![i.to_string()];
        r.extend(row.iter().map(|b| b.to_string()));
        table.push(r);
    }
    let results = json!({
        "betti": v.table,
        "diagram": diagram,
        "regularity": reg,
        "observed_regularity": v.regularity,
        "certified": v.certified,
        "is_linear": v.is_linear,
        "generated_degree": v.generated_degree,
    });
    Ok((params(&[("a", json!(a))]), results, verdicts, table))
}

fn ghw<F: Scalar>(sigma: &FormCollection<F>, prov: &mut Provenance) -> Result<Parts, CliError> {
    let profile = sigma.code_profile()?;
    prov.projection = profile.projection.as_ref().map(ProjectionRecord::from);
    let mut verdicts = Vec::new();
    if profile.projection.is_none() {
        let agrees = profile
            .heights
            .iter()
            .all(|(&a, &h)| gamma_decomposition(sigma, a).ok().and_then(|d| d.height()) == Some(h));
        verdicts.push(Verdict::new("height_matches_decomposition", agrees, Hypothesis::NotRequired));
    }
    let mut table = Table::new(&["a", "height"]);
    for (a, h) in &profile.heights {
        table.push(vec![a.to_string(), h.to_string()]);
    }
    let results = json!({
        "weights": profile.weights,
        "heights": profile.heights,
        "total_multiplicity": sigma.total(),
        "rank": sigma.rank(),
    });
    Ok((BTreeMap::new(), results, verdicts, table))
}

fn star<F: Scalar>(
    sigma: FormCollection<F>,
    c: usize,
    m: usize,
    bound: Option<usize>,
    prov: &mut Provenance,
) -> Result<Parts, CliError> {
    let config = StarConfig::new(sigma, c)?;
    let bound = resolve_bound(prov, "symbolic_power", bound, config.default_bound(m));
    let g = config.verify_symbolic_power(m, bound)?;
    let mut verdicts = vec![Verdict::from_check("symbolic_power_decomposition", &g.check)];
    verdicts.push(Verdict::new("components_match", g.components_match, Hypothesis::Satisfied));
    let mut table = Table::new(&["degree", "ordinary_power_dim", "symbolic_rhs_dim"]);
    for &(d, l, r) in &g.check.dims {
        table.push(vec![d.to_string(), l.to_string(), r.to_string()]);
    }
    let results = json!({
        "s": config.s(),
        "n": config.n(),
        "generation_degree": config.generation_degree(),
        "star_generators": config.star_ideal().generators().len(),
        "components": config.power_decomposition(m)?.summary(),
        "dims": g.check.dims,
    });
    Ok((params(&[("c", json!(c)), ("m", json!(m))]), results, verdicts, table))
}

#[allow(clippy::too_many_arguments)]
fn resurgence<F: Scalar>(
    sigma: Option<FormCollection<F>>,
    s: usize,
    c: usize,
    m_max: usize,
    r_max: usize,
    phi_max: usize,
    bound: Option<usize>,
    prov: &mut Provenance,
) -> Result<Parts, CliError> {
    let model = MonomialStarModel::new(s, c)?;
    let report = model.resurgence_search(m_max, r_max)?;
    let mut verdicts = vec![Verdict::new(
        "no_failure_at_or_above_formula",
        report.failures_at_or_above_formula == 0,
        Hypothesis::NotRequired,
    )];
    let mut table = Table::new(&["m", "r", "ratio", "contained", "witness"]);
    for cell in &report.table {
        let witness = cell
            .witness
            .as_ref()
            .map_or(String::new(), |t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        let ratio = Rational::new(cell.m as i64, cell.r as i64);
        table.push(vec![cell.m.to_string(), cell.r.to_string(), ratio.to_string(), cell.contained.to_string(), witness]);
    }
    let mut phi = Vec::new();
    if let Some(sigma) = sigma {
        if sigma.support_size() != s {
            return Err(CliError::usage(format!("collection has {} forms but s = {s}", sigma.support_size())));
        }
        let config = StarConfig::new(sigma, c)?;
        for m in 1..=phi_max.min(m_max) {
            for r in 1..=phi_max.min(r_max) {
                let default = default_degree_bound(r * config.generation_degree(), config.arrangement().nvars());
                let d = resolve_bound(prov, &format!("phi_transfer(m={m},r={r})"), bound, default);
                let p = phi_transfer_check(&config, m, r, d)?;
                verdicts.push(Verdict {
                    degree_bound: Some(d),
                    ..Verdict::new(format!("phi_transfer(m={m},r={r})"), p.agree && p.images_in_symbolic, Hypothesis::Satisfied)
                });
                phi.push(p);
            }
        }
    }
    let results = json!({
        "formula": report.formula.to_string(),
        "sup_failing_ratio": report.sup_failing_ratio.as_ref().map(|q| q.to_string()),
        "sup_witness": report.sup_witness,
        "smallest_contained_ratio_above": report.smallest_contained_ratio_above.as_ref().map(|q| q.to_string()),
        "gap_below_formula": report.gap_below_formula.as_ref().map(|q| q.to_string()),
        "failures_at_or_above_formula": report.failures_at_or_above_formula,
        "corroborates_formula": report.corroborates_formula(),
        "table": report.table,
        "phi_transfer": phi,
    });
    let parameters = params(&[
        ("s", json!(s)),
        ("c", json!(c)),
        ("m_max", json!(m_max)),
        ("r_max", json!(r_max)),
        ("phi_max", json!(phi_max)),
    ]);
    Ok((parameters, results, verdicts, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::input::parse_spec;
    use crate::cli::report::{EXIT_HYPOTHESIS, EXIT_OK};

    const FOUR_LINES: &str = r#"{"num_vars": 3, "forms": [{"coeffs": [1,0,0]}, {"coeffs": [0,1,0]},
        {"coeffs": [0,0,1]}, {"coeffs": [1,1,1]}]}"#;

    #[test]
    fn betti_of_four_lines_is_linear() {
        let spec = parse_spec(FOUR_LINES).unwrap();
        let (report, table) = execute(&Command::Betti { a: 3, bound: None }, Some(&spec), None).unwrap();
        assert_eq!(report.check_status(), EXIT_OK);
        assert_eq!(report.results["regularity"], json!(2));
        assert_eq!(table.header[0], "i");
        assert_eq!(report.provenance.degree_bounds[0].source, BoundSource::Default);
    }

    #[test]
    fn ghw_of_four_lines() {
        let spec = parse_spec(FOUR_LINES).unwrap();
        let (report, _) = execute(&Command::Ghw, Some(&spec), None).unwrap();
        assert_eq!(report.results["weights"], json!([2, 3, 4]));
    }

    #[test]
    fn resurgence_without_spec() {
        let cmd = Command::Resurgence { s: 4, c: 2, m_max: 8, r_max: 6, phi_max: 0, bound: None };
        let (report, table) = execute(&cmd, None, None).unwrap();
        assert_eq!(report.results["formula"], json!("3/2"));
        assert_eq!(report.check_status(), EXIT_OK);
        assert_eq!(table.rows.len(), 48);
    }

    #[test]
    fn star_on_non_generic_support_is_a_hypothesis_error() {
        let spec = parse_spec(
            r#"{"num_vars": 3, "forms": [{"coeffs": [1,0,0]}, {"coeffs": [0,1,0]}, {"coeffs": [1,1,0]}, {"coeffs": [0,0,1]}]}"#,
        )
        .unwrap();
        let e = execute(&Command::Star { c: 2, m: 1, bound: None }, Some(&spec), None).unwrap_err();
        assert_eq!(e.exit_code, EXIT_HYPOTHESIS);
    }

    #[test]
    fn prime_field_agrees_with_rationals() {
        let spec = parse_spec(FOUR_LINES).unwrap();
        for a in 1..=4 {
            let cmd = Command::Betti { a, bound: None };
            let (q, _) = execute(&cmd, Some(&spec), None).unwrap();
            let (p, _) = execute(&cmd, Some(&spec), Some(Field::Prime(32003))).unwrap();
            assert_eq!(q.results, p.results);
        }
    }
}
