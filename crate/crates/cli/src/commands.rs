use std::io::Write;
use std::path::Path;

use belldecomp::decomposition::{inverse_sub_matrices, singular_pairs, sub_matrices};
use belldecomp::oracle::{joint_state, rearrange_for_measurement, ORACLE_CAP};
use belldecomp::protocol::{outcome_probabilities, reconstruct_joint_state, ENUMERATION_CAP};
use belldecomp::random::random_instance;
use belldecomp::tensor::tensor_product_all;
use belldecomp::{
    channel_criterion, collapsed_state, cross_check, enumerate_outcomes, inverse_sub_matrix,
    is_proportional_to_unitary, recover, sample_outcome, sub_matrix, Channel, DenseMatrix,
    EntangledPair, PairingConvention, StateVector, SubMatrix, TeleportationInstance,
    RENORMALIZE_WARN_TOL,
};

use crate::config::{DecomposeArgs, SweepArgs, TeleportArgs, VerifyArgs};
use crate::error::{CliError, Exit, Result};
use crate::files::{load_channel, load_state};
use crate::format;

/// Largest register whose full `2^N × 2^N` matrix is printed.
const PRINT_MATRIX_MAX_QUBITS: usize = 4;

fn normalized_channel(path: &Path, warn: &mut dyn Write) -> Result<Channel> {
    let (channel, flagged) = load_channel(path)?.validated(RENORMALIZE_WARN_TOL)?;
    for i in flagged {
        writeln!(
            warn,
            "warning: pair {i} in {} was renormalized",
            path.display()
        )?;
    }
    Ok(channel)
}

fn normalized_state(path: &Path, warn: &mut dyn Write) -> Result<StateVector> {
    let state = load_state(path)?;
    if (state.norm() - 1.0).abs() > RENORMALIZE_WARN_TOL {
        writeln!(
            warn,
            "warning: state in {} was renormalized",
            path.display()
        )?;
    }
    Ok(state.normalized()?)
}

fn load_instance(
    state: &Path,
    channel: &Path,
    convention: PairingConvention,
    warn: &mut dyn Write,
) -> Result<TeleportationInstance> {
    let input = normalized_state(state, warn)?;
    let channel = normalized_channel(channel, warn)?;
    if input.num_qubits() != channel.len() {
        return Err(CliError::Usage(format!(
            "state has {} qubits but channel has {} pairs",
            input.num_qubits(),
            channel.len()
        )));
    }
    Ok(TeleportationInstance::new(input, channel, convention)?)
}

fn write_factors(
    out: &mut dyn Write,
    factors: &[SubMatrix],
    alphas: &[u8],
    label: &str,
    convention: Option<PairingConvention>,
) -> Result<()> {
    for (i, (f, &mu)) in factors.iter().zip(alphas).enumerate() {
        match convention {
            Some(c) => writeln!(
                out,
                "  {label} pair {} mu={mu}  {}",
                i + 1,
                format::symbolic_sub_matrix(mu, c)
            )?,
            None => writeln!(out, "  {label} pair {} mu={mu}", i + 1)?,
        }
        write!(out, "{}", format::matrix(f.matrix(), "    "))?;
    }
    Ok(())
}

fn write_full(out: &mut dyn Write, factors: &[SubMatrix], title: &str) -> Result<()> {
    let n = factors.len();
    if n > PRINT_MATRIX_MAX_QUBITS {
        writeln!(out, "{title}: omitted ({0}x{0})", 1usize << n)?;
        return Ok(());
    }
    let full: DenseMatrix =
        tensor_product_all(factors.iter().map(SubMatrix::matrix)).expect("N >= 1");
    writeln!(out, "{title} ({0}x{0}):", full.rows())?;
    write!(out, "{}", format::matrix(&full, "  "))?;
    Ok(())
}

pub fn decompose(
    args: &DecomposeArgs,
    tol_inv: f64,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<Exit> {
    let conv = args.convention.convention;
    let channel = normalized_channel(&args.channel, warn)?;
    let o = &args.outcome;
    let n = channel.len();
    writeln!(out, "pairs: {n}")?;
    writeln!(out, "convention: {conv}")?;
    writeln!(out, "outcome: {o}")?;
    writeln!(out)?;

    writeln!(out, "sub-matrix table:")?;
    for mu in 1..=4u8 {
        writeln!(
            out,
            "  sigma^{mu} = {}",
            format::symbolic_sub_matrix(mu, conv)
        )?;
    }
    for (i, p) in channel.pairs().iter().enumerate() {
        let y: Vec<String> = p.amps().iter().map(|&a| format::amp(a)).collect();
        writeln!(out, "  pair {}: Y = ({})", i + 1, y.join(", "))?;
        for mu in 1..=4u8 {
            writeln!(out, "    mu={mu}")?;
            write!(
                out,
                "{}",
                format::matrix(sub_matrix(p, mu, conv)?.matrix(), "      ")
            )?;
        }
    }
    writeln!(out)?;

    let factors = sub_matrices(&channel, o, conv)?;
    writeln!(out, "decomposition factors for outcome {o}:")?;
    write_factors(out, &factors, o.alphas(), "sigma", Some(conv))?;
    write_full(
        out,
        &factors,
        &format!("decomposition matrix sigma^{o}, prefactor (1/sqrt2)^{n} not included"),
    )?;
    writeln!(out)?;

    match inverse_sub_matrices(&channel, o, conv, tol_inv) {
        Ok(inv) => {
            writeln!(out, "inverse factors:")?;
            write_factors(out, &inv, o.alphas(), "inverse", None)?;
            write_full(out, &inv, &format!("inverse of sigma^{o}"))?;
        }
        Err(belldecomp::Error::NotInvertible { pairs }) => {
            let list: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
            writeln!(
                out,
                "inverse: none (Y1*Y4 = Y2*Y3 within {tol_inv:e} for pair(s) {})",
                list.join(", ")
            )?;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Exit::Success)
}

pub fn teleport(
    args: &TeleportArgs,
    tol_inv: f64,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<Exit> {
    let conv = args.convention.convention;
    let inst = load_instance(&args.state, &args.channel, conv, warn)?;
    let report = channel_criterion(inst.channel(), tol_inv);
    writeln!(out, "qubits: {}", inst.num_qubits())?;
    writeln!(out, "convention: {conv}")?;
    writeln!(out, "seed: {}", args.seed)?;
    for p in &report.pairs {
        writeln!(
            out,
            "pair {}: det = {}  concurrence = {:.6}  invertible = {}  unitary-proportional = {}",
            p.index,
            format::amp(p.determinant),
            p.concurrence,
            p.invertible,
            p.unitary_proportional
        )?;
    }
    if !report.success {
        return Err(belldecomp::Error::NotInvertible {
            pairs: report.failing_pairs(),
        }
        .into());
    }

    let o = sample_outcome(&inst, args.seed)?;
    let raw = collapsed_state(&inst, &o)?;
    writeln!(out, "outcome: {o}")?;
    writeln!(out, "probability: {:.12}", raw.norm_sqr())?;
    writeln!(out, "collapsed state (normalized):")?;
    write!(out, "{}", format::state(&raw.normalized()?, "  "))?;

    let inv = inverse_sub_matrices(inst.channel(), &o, conv, tol_inv)?;
    writeln!(out, "recovery factors:")?;
    write_factors(out, &inv, o.alphas(), "inverse", None)?;
    let unitary = inv
        .iter()
        .all(|f| is_proportional_to_unitary(f, tol_inv).proportional);
    writeln!(
        out,
        "recovery unitary up to scale: {}",
        if unitary { "yes" } else { "no" }
    )?;

    let rec = recover(&raw, &inst, &o, tol_inv)?;
    writeln!(out, "recovered state:")?;
    write!(out, "{}", format::state(&rec.state, "  "))?;
    writeln!(out, "fidelity: {:.12}", rec.fidelity)?;
    Ok(Exit::Success)
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn verify_instance(inst: &TeleportationInstance, tol_eq: f64, tol_inv: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let n = inst.num_qubits();

    let cc = cross_check(inst, tol_eq)?;
    checks.push(check(
        "oracle",
        cc.passed,
        format!(
            "max|diff| = {:.3e} over {} outcomes (worst {})",
            cc.max_abs_diff, cc.num_outcomes, cc.worst_outcome
        ),
    ));

    let total: f64 = outcome_probabilities(inst, ENUMERATION_CAP)?.iter().sum();
    checks.push(check(
        "completeness",
        (total - 1.0).abs() <= tol_eq,
        format!("|sum p - 1| = {:.3e}", (total - 1.0).abs()),
    ));

    if n <= PRINT_MATRIX_MAX_QUBITS {
        let rebuilt = reconstruct_joint_state(inst)?;
        let truth = rearrange_for_measurement(&joint_state(inst, ORACLE_CAP)?, inst)?;
        let d = rebuilt.max_abs_diff(&truth)?;
        checks.push(check(
            "reconstruction",
            d <= tol_eq,
            format!("max|diff| = {d:.3e}"),
        ));
    }

    let singular = singular_pairs(inst.channel(), tol_inv);
    if singular.is_empty() {
        let mut worst_inv = 0.0f64;
        for p in inst.channel().pairs() {
            for mu in 1..=4u8 {
                let s = sub_matrix(p, mu, inst.convention())?;
                let inv = inverse_sub_matrix(p, mu, inst.convention(), tol_inv)?;
                let prod = inv.matrix().matmul(s.matrix())?;
                let d = prod.max_abs_diff(&DenseMatrix::identity(2)).expect("2x2");
                worst_inv = worst_inv.max(d);
            }
        }
        checks.push(check(
            "inverse",
            worst_inv <= tol_eq,
            format!("max|inv*sigma - I| = {worst_inv:.3e}"),
        ));

        let records = enumerate_outcomes(inst, ENUMERATION_CAP, tol_inv)?;
        let min_fid = records
            .iter()
            .filter_map(|r| r.recovered_fidelity)
            .fold(1.0f64, f64::min);
        checks.push(check(
            "recovery",
            min_fid >= 1.0 - tol_eq,
            format!("1 - min fidelity = {:.3e}", 1.0 - min_fid),
        ));
    } else {
        let list: Vec<String> = singular.iter().map(|p| p.to_string()).collect();
        checks.push(check(
            "recovery",
            true,
            format!("skipped: criterion fails for pair(s) {}", list.join(", ")),
        ));
    }
    Ok(checks)
}

pub fn verify(
    args: &VerifyArgs,
    tol_eq: f64,
    tol_inv: f64,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<Exit> {
    let mut instances: Vec<(String, TeleportationInstance)> = Vec::new();
    match (&args.state, &args.channel, args.random) {
        (Some(state), Some(channel), _) => {
            let inst = load_instance(state, channel, PairingConvention::default(), warn)?;
            for conv in PairingConvention::ALL {
                instances.push((format!("file {conv}"), inst.with_convention(conv)));
            }
        }
        (_, _, Some(n)) => {
            if n == 0 {
                return Err(CliError::Usage("--random needs at least one qubit".into()));
            }
            for i in 0..args.instances {
                let seed = args.seed.wrapping_add(i);
                for conv in PairingConvention::ALL {
                    instances.push((
                        format!("n={n} seed={seed} {conv}"),
                        random_instance(n, conv, seed)?,
                    ));
                }
            }
        }
        _ => {
            return Err(CliError::Usage(
                "verify needs --state/--channel or --random".into(),
            ))
        }
    }
    if let Some((_, inst)) = instances.first() {
        if inst.num_qubits() > ORACLE_CAP {
            return Err(belldecomp::Error::CapExceeded {
                what: "oracle",
                n: inst.num_qubits(),
                cap: ORACLE_CAP,
            }
            .into());
        }
    }

    let (mut passed, mut total) = (0usize, 0usize);
    for (label, inst) in &instances {
        for c in verify_instance(inst, tol_eq, tol_inv)? {
            total += 1;
            passed += c.passed as usize;
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "[{tag}] {label} {}: {}", c.name, c.detail)?;
        }
    }
    writeln!(
        out,
        "verify: {passed}/{total} checks passed (tol-eq {tol_eq:e}, tol-inv {tol_inv:e})"
    )?;
    Ok(if passed == total {
        Exit::Success
    } else {
        Exit::VerificationFailed
    })
}

pub const SWEEP_HEADER: [&str; 5] = [
    "theta",
    "outcome",
    "probability",
    "abs_det_min",
    "min_singular_value",
];

pub fn sweep(
    args: &SweepArgs,
    tol_inv: f64,
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<Exit> {
    let conv = args.convention.convention;
    let base = load_instance(&args.state, &args.channel, conv, warn)?;
    let n = base.num_qubits();
    if args.pair == 0 || args.pair > n {
        return Err(CliError::Usage(format!(
            "--pair must be in 1..={n}, got {}",
            args.pair
        )));
    }
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    belldecomp::protocol::check_enumeration_cap(n, ENUMERATION_CAP)?;

    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(SWEEP_HEADER)?;
    for step in 0..args.steps {
        let theta = if args.steps == 1 {
            args.theta_min
        } else {
            args.theta_min
                + (args.theta_max - args.theta_min) * step as f64 / (args.steps - 1) as f64
        };
        let channel = base
            .channel()
            .with_pair(args.pair - 1, EntangledPair::schmidt(theta)?)?;
        let inst = TeleportationInstance::new(base.input().clone(), channel, conv)?;
        let report = channel_criterion(inst.channel(), tol_inv);
        let abs_det_min = format!("{:.12}", report.min_abs_det());
        let min_sv = format!("{:.12}", report.min_singular_value());
        let theta_s = format!("{theta:.6}");
        for (i, p) in outcome_probabilities(&inst, ENUMERATION_CAP)?
            .iter()
            .enumerate()
        {
            let o = belldecomp::BellOutcome::from_index(n, i);
            csv.write_record([
                theta_s.as_str(),
                &o.to_string(),
                &format!("{p:.12}"),
                &abs_det_min,
                &min_sv,
            ])?;
        }
    }
    csv.flush()?;
    Ok(Exit::Success)
}
