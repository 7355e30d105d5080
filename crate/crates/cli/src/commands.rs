use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use acegraph::evaluator::{eval_graph, eval_model, parse_coefficients, parse_config, pool, ParticleConfig};
use acegraph::graph::{deserialize, serialize};
use acegraph::verify::{
    classifier_suite, exact_count_suite, identities_suite, invariance_suite, oracle_suite, SuiteReport,
};
use acegraph::{
    build, classify, enumerate_k, invariant_decompositions, stats, Algorithm, DegreeSpec, Dependence, Error,
};

use crate::{AlgArg, BuildArgs, ClassifyArgs, Command, EnumerateArgs, EvalArgs, StatsArgs, Suite, VerifyArgs};

pub enum CliError {
    /// Bad flag combination: exit 2.
    Usage(String),
    /// Library, file or I/O failure: exit 1.
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => CliError::Usage(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

type CliResult = Result<ExitCode, CliError>;

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Enumerate(a) => enumerate(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Build(a) => build_cmd(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Eval(a) => eval_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

/// Writes to `--out` when given, stdout otherwise.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn algorithm(alg: AlgArg, n: usize) -> Result<Algorithm, CliError> {
    match alg {
        AlgArg::Orig => Ok(Algorithm::Original),
        AlgArg::Gen if n == 0 => Err(CliError::Usage("--n must be at least 1".into())),
        AlgArg::Gen => Ok(Algorithm::Generalized { n }),
    }
}

fn enumerate(a: EnumerateArgs) -> CliResult {
    let s = a.set;
    if s.nu == 0 {
        return Err(CliError::Usage("--nu must be at least 1".into()));
    }
    let tuples = enumerate_k(s.group, s.nu, DegreeSpec::new(s.p, s.d))?;
    let text = if s.count_only {
        format!("{}\n", tuples.len())
    } else {
        tuples.iter().map(|t| format!("{t}\n")).collect()
    };
    emit(s.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn classify_cmd(a: ClassifyArgs) -> CliResult {
    let s = a.set;
    if s.nu == 0 {
        return Err(CliError::Usage("--nu must be at least 1".into()));
    }
    let tuples = enumerate_k(s.group, s.nu, DegreeSpec::new(s.p, s.d))?;
    let mut text = String::new();
    let mut dependent = 0;
    for t in &tuples {
        let dep = classify(t, s.group)?;
        if dep == Dependence::Dependent {
            dependent += 1;
        }
        if !s.count_only {
            match invariant_decompositions(t, s.group)?.first() {
                Some(d) => text.push_str(&format!("{t} dependent {} {}\n", d.left, d.right)),
                None => text.push_str(&format!("{t} independent\n")),
            }
        }
    }
    if s.count_only {
        text = format!("total={} dependent={} independent={}\n", tuples.len(), dependent, tuples.len() - dependent);
    }
    emit(s.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn build_cmd(a: BuildArgs) -> CliResult {
    if a.numax == 0 {
        return Err(CliError::Usage("--numax must be at least 1".into()));
    }
    let alg = algorithm(a.alg, a.n)?;
    let g = build(a.group, DegreeSpec::new(a.p, a.d), a.numax, alg)?;
    emit(a.out.as_deref(), &serialize(&g))?;
    Ok(ExitCode::SUCCESS)
}

pub const STATS_HEADER: &str =
    "group,p,numax,D,alg,n,num_targets,num_dependent,num_independent,num_aux,num_total,ratio_dep,ratio_aux";

fn stats_cmd(a: StatsArgs) -> CliResult {
    let degrees: Vec<u32> = match (a.d, a.d_max) {
        (Some(d), _) => vec![d],
        (None, Some(hi)) if hi >= a.d_min => (a.d_min..=hi).collect(),
        (None, Some(_)) => return Err(CliError::Usage("--Dmax must not be below --Dmin".into())),
        (None, None) => return Err(CliError::Usage("either --D or --Dmax is required".into())),
    };
    if a.numax.contains(&0) {
        return Err(CliError::Usage("--numax values must be at least 1".into()));
    }
    let mut numaxes = a.numax.clone();
    numaxes.sort_unstable();
    numaxes.dedup();
    let mut algs = Vec::new();
    for &alg in &a.alg {
        let alg = algorithm(alg, a.n)?;
        if !algs.contains(&alg) {
            algs.push(alg);
        }
    }
    algs.sort_by_key(|alg| (matches!(alg, Algorithm::Generalized { .. }), alg.n()));

    let mut text = format!("{STATS_HEADER}\n");
    for &nu_max in &numaxes {
        for &d in &degrees {
            for &alg in &algs {
                let g = build(a.group, DegreeSpec::new(a.p, d), nu_max, alg)?;
                let s = stats(&g);
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    a.group,
                    a.p,
                    nu_max,
                    d,
                    alg.tag(),
                    alg.n(),
                    s.num_targets,
                    s.num_dependent,
                    s.num_independent,
                    s.num_aux,
                    s.num_total,
                    s.ratio_dep,
                    s.ratio_aux
                ));
            }
        }
    }
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn eval_cmd(a: EvalArgs) -> CliResult {
    let graph = deserialize(&read(&a.graph)?).map_err(|e| CliError::Runtime(format!("{}: {e}", a.graph.display())))?;
    let config: ParticleConfig<f64> =
        parse_config(&read(&a.config)?).map_err(|e| CliError::Runtime(format!("{}: {e}", a.config.display())))?;
    let meta = graph.meta();
    if config.group() != meta.group {
        return Err(CliError::Runtime(format!(
            "configuration is for {}, graph is for {}",
            config.group(),
            meta.group
        )));
    }
    let text = match &a.coeffs {
        Some(path) => {
            let coeffs = parse_coefficients::<f64>(meta.group, &read(path)?)
                .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            let value = eval_model(&graph, &coeffs, &config)?;
            if a.real_part {
                format!("{}\n", value.re)
            } else {
                format!("{} {}\n", value.re, value.im)
            }
        }
        None => {
            let pooled = pool(meta.group, meta.degree.max_degree, &config)?;
            let values = eval_graph(&graph, &pooled)?;
            graph
                .nodes()
                .iter()
                .zip(values)
                .map(|(n, v)| {
                    if a.real_part {
                        format!("{} {} {}\n", n.id, n.tuple.to_flat_string(), v.re)
                    } else {
                        format!("{} {} {} {}\n", n.id, n.tuple.to_flat_string(), v.re, v.im)
                    }
                })
                .collect()
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(a: VerifyArgs) -> CliResult {
    if a.numax < 2 {
        return Err(CliError::Usage("--numax must be at least 2".into()));
    }
    let wanted = |s: Suite| a.suite == Suite::All || a.suite == s;
    let mut reports: Vec<SuiteReport> = Vec::new();
    if wanted(Suite::TExactCount) {
        let nu_maxes: Vec<usize> = (2..=a.numax).collect();
        reports.push(exact_count_suite(&nu_maxes, 1..=a.d_max)?);
    }
    if wanted(Suite::Oracle) {
        reports.push(oracle_suite(a.group, a.numax, a.d, a.configs, a.seed)?);
    }
    if wanted(Suite::Classifier) {
        reports.push(classifier_suite(a.group, a.numax, a.d)?);
    }
    if wanted(Suite::Invariance) {
        reports.push(invariance_suite(a.group, a.numax, a.d, a.configs, a.seed)?);
    }
    if wanted(Suite::Identities) {
        reports.push(identities_suite(20, 100, 200));
    }
    let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
    emit(None, &text)?;
    if reports.iter().all(|r| r.passed) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
