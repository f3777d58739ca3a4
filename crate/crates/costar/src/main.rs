use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use costar::cli::RunConfig;

fn main() -> ExitCode {
    let config = RunConfig::parse();

    #[cfg(feature = "parallel")]
    if let Some(workers) = config.workers {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: cannot size the worker pool: {err}");
            return ExitCode::FAILURE;
        }
    }

    let stdout = std::io::stdout().lock();
    let mut out = std::io::BufWriter::new(stdout);
    match costar::cli::run(config, &mut out) {
        Ok(()) => {
            if let Err(err) = out.flush() {
                eprintln!("error: {err}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
