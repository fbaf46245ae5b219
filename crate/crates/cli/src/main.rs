//! `hxt`: canonical forms, Hermite reduction and creative telescoping of
//! hyperexponential functions from the command line.
//!
//! The input function is `H = expr·exp(∫ dlogx dx + dlogy dy)`, with every
//! part given in the rational-function grammar of `hermite_ct::expr`.

use clap::{Args, Parser, Subcommand};
use hermite_ct::arith::Qxy;
use hermite_ct::bench::{generate_instance, run_instance, BenchRecord, BenchSpec};
use hermite_ct::canon::{kernel_shell, multiply_by_rational, validate_descriptor, CanonSummary, HyperexpDescriptor};
use hermite_ct::expr::{parse_ratfn, print_poly, print_ratfn, RatFnJson, ResidualFormJson, TelescoperJson};
use hermite_ct::hermite::hermite_reduce;
use hermite_ct::telescope::{certificate_over_h, hermite_telescoping, order_bound};
use hermite_ct::verify::check_certificate;
use hermite_ct::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hxt", version, about = "Hermite reduction and creative telescoping for hyperexponential functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel and shell of D_y(H)/H.
    Canon(FunctionArgs),
    /// Hermite reduction with respect to y and the integrability decision.
    Reduce(FunctionArgs),
    /// Minimal telescoper with respect to x.
    Telescope {
        #[command(flatten)]
        function: FunctionArgs,
        /// Also compute the certificate.
        #[arg(long)]
        certify: bool,
    },
    /// Telescope with and without certificate and check both results.
    Verify(FunctionArgs),
    /// Telescope seeded random instances p/q^m·sqrt(a/b)·exp(u/v).
    Bench(BenchArgs),
}

#[derive(Args)]
struct FunctionArgs {
    /// D_x(H)/H without the rational factor.
    #[arg(long, default_value = "0")]
    dlogx: String,
    /// D_y(H)/H without the rational factor.
    #[arg(long, default_value = "0")]
    dlogy: String,
    /// Rational factor of H.
    #[arg(long, default_value = "1")]
    expr: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// y-degree of p and q.
    #[arg(long)]
    lambda: usize,
    /// y-degree of a and b.
    #[arg(long)]
    mu: usize,
    /// y-degree of u and v.
    #[arg(long)]
    nu: usize,
    /// Multiplicity of q.
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coefficients are drawn from [-bound, bound].
    #[arg(long, default_value_t = 5)]
    coeff_bound: i64,
    /// Verify each telescoper through its certificate.
    #[arg(long)]
    certify: bool,
    #[arg(long)]
    json: bool,
}

impl FunctionArgs {
    /// `(D_x(H)/H, D_y(H)/H)` including the rational factor.
    fn log_derivatives(&self) -> Result<(Qxy, Qxy)> {
        let f = parse_ratfn(&self.dlogx)?;
        let g = parse_ratfn(&self.dlogy)?;
        let r = parse_ratfn(&self.expr)?;
        multiply_by_rational(&f, &g, &r)
    }

    fn descriptor(&self) -> Result<HyperexpDescriptor> {
        let (f, g) = self.log_derivatives()?;
        validate_descriptor(&f, &g)
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn canon(args: &FunctionArgs) -> Result<()> {
    let (_, g) = args.log_derivatives()?;
    let ks = kernel_shell(&g);
    let summary = CanonSummary::from(&ks);
    emit(args.json, &summary, || {
        format!(
            "kernel: {}\nshell: {}\nrational: {}\n",
            print_ratfn(&ks.kernel),
            print_ratfn(&ks.shell),
            summary.rational
        )
    });
    Ok(())
}

#[derive(Serialize)]
struct ReduceOutput {
    kernel: RatFnJson,
    shell: RatFnJson,
    h: RatFnJson,
    residual: ResidualFormJson,
    integrable: bool,
}

fn reduce(args: &FunctionArgs) -> Result<()> {
    let (_, g) = args.log_derivatives()?;
    let ks = kernel_shell(&g);
    let (h, r) = hermite_reduce(&ks)?;
    let out = ReduceOutput {
        kernel: (&ks.kernel).into(),
        shell: (&ks.shell).into(),
        h: (&h).into(),
        residual: (&r).into(),
        integrable: r.is_zero(),
    };
    emit(args.json, &out, || {
        format!(
            "kernel: {}\nshell: {}\nh: {}\nresidual: {}\n  q: {}\n  b: {}\n  v: {}\n  k2: {}\n  support: {:?}\nintegrable: {}\n",
            print_ratfn(&ks.kernel),
            print_ratfn(&ks.shell),
            print_ratfn(&h),
            print_ratfn(&r.to_ratfn()),
            print_poly(&r.q),
            print_poly(&r.b),
            print_poly(&r.v),
            print_poly(&r.k2),
            out.residual.support,
            out.integrable
        )
    });
    Ok(())
}

#[derive(Serialize)]
struct TelescopeOutput {
    #[serde(flatten)]
    telescoper: TelescoperJson,
    order_bound: usize,
    /// `G/H` when a certificate was computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_over_h: Option<RatFnJson>,
}

fn operator_text(coeffs: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| match i {
            0 => format!("({c})"),
            1 => format!("({c})*Dx"),
            _ => format!("({c})*Dx^{i}"),
        })
        .collect();
    terms.join(" + ")
}

fn telescope(args: &FunctionArgs, certify: bool) -> Result<()> {
    let desc = args.descriptor()?;
    let t = hermite_telescoping(&desc, certify)?;
    let over_h = t.certificate.as_ref().map(|u| certificate_over_h(&desc, u));
    let out = TelescopeOutput {
        telescoper: (&t).into(),
        order_bound: order_bound(&desc.ks),
        certificate_over_h: over_h.as_ref().map(RatFnJson::from),
    };
    emit(args.json, &out, || {
        let mut s = format!(
            "order: {}\norder bound: {}\nL: {}\n",
            t.order,
            out.order_bound,
            operator_text(&out.telescoper.coeffs)
        );
        if let (Some(u), Some(g)) = (&t.certificate, &over_h) {
            s += &format!("certificate: G = u*H/S with u = {}\nG/H: {}\n", print_ratfn(u), print_ratfn(g));
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput {
    order: usize,
    order_bound: usize,
    within_bound: bool,
    certificate_valid: bool,
    modes_agree: bool,
}

fn verify(args: &FunctionArgs) -> Result<()> {
    let desc = args.descriptor()?;
    let with = hermite_telescoping(&desc, true)?;
    let without = hermite_telescoping(&desc, false)?;
    let out = VerifyOutput {
        order: with.order,
        order_bound: order_bound(&desc.ks),
        within_bound: with.order <= order_bound(&desc.ks),
        certificate_valid: check_certificate(&desc, &with)?,
        modes_agree: with.coeffs == without.coeffs,
    };
    emit(args.json, &out, || {
        format!(
            "order: {} (bound {})\ncertificate valid: {}\ncertify and plain modes agree: {}\n",
            out.order, out.order_bound, out.certificate_valid, out.modes_agree
        )
    });
    if out.within_bound && out.certificate_valid && out.modes_agree {
        Ok(())
    } else {
        Err(Error::Internal("verification failed".into()))
    }
}

#[derive(Serialize)]
struct BenchOutput {
    spec: BenchSpec,
    instances: Vec<BenchRecord>,
}

fn bench(args: &BenchArgs) -> Result<()> {
    let spec = BenchSpec {
        lambda: args.lambda,
        mu: args.mu,
        nu: args.nu,
        m: args.m,
        coeff_bound: args.coeff_bound,
        seed: args.seed,
        count: args.count,
    };
    spec.validate()?;
    let instances = (0..spec.count)
        .into_par_iter()
        .map(|i| run_instance(&generate_instance(&spec, i)?, args.certify).map(|(rec, _)| rec))
        .collect::<Result<Vec<_>>>()?;
    let out = BenchOutput { spec, instances };
    emit(args.json, &out, || {
        let mut s = String::from("index order bound az_bound seconds verified\n");
        for r in &out.instances {
            s += &format!("{} {} {} {} {:.3} {}\n", r.index, r.order, r.order_bound, r.az_bound, r.seconds, r.verified);
        }
        s
    });
    match out.instances.iter().find(|r| !r.verified || r.order > r.order_bound) {
        Some(r) => Err(Error::Internal(format!("instance {} failed verification or exceeded its bound", r.index))),
        None => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Canon(a) => canon(a),
        Command::Reduce(a) => reduce(a),
        Command::Telescope { function, certify } => telescope(function, *certify),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hxt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
