use std::error::Error as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use treealign_cli::{
    read_manifest, run_manifest, CliError, Pair, PairOutcome, Settings, EXIT_USAGE,
};
use treealign_core::{Comparator, SourceFormat};

/// Align the trees of two annotated versions of the same text.
#[derive(Debug, Parser)]
#[command(name = "treealign", version)]
struct Args {
    /// Left corpus file.
    #[arg(long, requires = "right", conflicts_with = "manifest")]
    left: Option<PathBuf>,
    /// Right corpus file.
    #[arg(long, requires = "left", conflicts_with = "manifest")]
    right: Option<PathBuf>,
    /// TSV file of `left<TAB>right` pairs, relative to its own directory.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// penn, susanne or generic.
    #[arg(long, default_value = "generic")]
    left_format: SourceFormat,
    #[arg(long, default_value = "generic")]
    right_format: SourceFormat,
    /// Report directory (one subdirectory per pair with --manifest).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare terminals case-insensitively (default).
    #[arg(long, overrides_with = "no_ignore_case")]
    ignore_case: bool,
    #[arg(long, overrides_with = "ignore_case")]
    no_ignore_case: bool,
    /// Ignore all whitespace inside terminals when comparing (default).
    #[arg(long, overrides_with = "no_ignore_space")]
    ignore_space: bool,
    #[arg(long, overrides_with = "ignore_space")]
    no_ignore_space: bool,
    /// Align on yield endpoints alone, without checking the interior.
    #[arg(long)]
    endpoints_only: bool,
    /// Terminal rewrite rules (`pattern<TAB>replacement`) for the left side.
    #[arg(long, value_name = "FILE")]
    rewrite_left: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    rewrite_right: Option<PathBuf>,
    /// Remove Penn empty-element terminals such as `*T*-1` on both sides.
    #[arg(long)]
    drop_empty_elements: bool,
    /// Print the summary instead of writing report files.
    #[arg(long)]
    stats_only: bool,
    /// Pairs to process concurrently.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

fn report_error(err: &CliError) {
    let mut msg = format!("treealign: {err}");
    let mut source = err.source();
    // Path-wrapping variants already print their source inline.
    if matches!(err, CliError::Report(_)) {
        while let Some(s) = source {
            msg.push_str(&format!(": {s}"));
            source = s.source();
        }
    }
    eprintln!("{msg}");
}

fn run(args: Args) -> Result<i32, CliError> {
    let pairs = match (&args.manifest, &args.left, &args.right) {
        (Some(manifest), _, _) => read_manifest(manifest)?,
        (None, Some(left), Some(right)) => vec![Pair {
            left: left.clone(),
            right: right.clone(),
        }],
        _ => {
            return Err(CliError::Usage(
                "give --left and --right, or --manifest".to_string(),
            ))
        }
    };
    if args.out.is_none() && !args.stats_only {
        return Err(CliError::Usage(
            "--out is required unless --stats-only is given".to_string(),
        ));
    }
    let settings = Settings {
        left_format: args.left_format,
        right_format: args.right_format,
        comparator: Comparator {
            ignore_case: !args.no_ignore_case,
            ignore_space: !args.no_ignore_space,
        },
        endpoints_only: args.endpoints_only,
        rewrite_left: args.rewrite_left,
        rewrite_right: args.rewrite_right,
        drop_empty_elements: args.drop_empty_elements,
    };

    let out = if args.stats_only { None } else { args.out.as_deref() };
    let single = args.manifest.is_none();
    let outcomes: Vec<PairOutcome> = if single {
        // A single pair writes straight into --out.
        let rules = settings.load_rules()?;
        let result = treealign_cli::run_pair(&pairs[0], &settings, &rules, out);
        vec![PairOutcome {
            name: pairs[0].dir_name(1),
            result,
        }]
    } else {
        run_manifest(&pairs, &settings, out, args.jobs as usize)?
    };

    let mut status = 0;
    for outcome in outcomes {
        match outcome.result {
            Ok(report) => {
                if args.stats_only {
                    if !single {
                        println!("== {}", outcome.name);
                    }
                    print!("{}", report.stats.render());
                }
            }
            Err(err) => {
                report_error(&err);
                if status == 0 {
                    status = err.exit_code();
                }
            }
        }
    }
    Ok(status)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let code = run(args).unwrap_or_else(|err| {
        report_error(&err);
        err.exit_code()
    });
    ExitCode::from(code as u8)
}
