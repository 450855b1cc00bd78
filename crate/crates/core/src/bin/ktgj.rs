use clap::Parser;
use ktg_core::cli::{run, Cli, EXIT_INPUT};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let stream_ok = match (&cli.out, outcome.code) {
        (Some(path), 0) => std::fs::write(path, &outcome.output).map_err(|e| eprintln!("error: {}: {e}", path.display())),
        (_, 0) => {
            print!("{}", outcome.output);
            Ok(())
        }
        _ => {
            eprint!("{}", outcome.output);
            Ok(())
        }
    };
    std::process::exit(if stream_ok.is_err() { EXIT_INPUT } else { outcome.code });
}
