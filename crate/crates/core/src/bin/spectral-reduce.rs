use std::io::Write;

fn main() {
    let outcome = spectral_reduce::cli::run(std::env::args_os());
    if let Some(out) = &outcome.stdout {
        print!("{out}");
        let _ = std::io::stdout().flush();
    }
    if let Some(err) = &outcome.stderr {
        eprint!("{err}");
    }
    std::process::exit(outcome.code);
}
