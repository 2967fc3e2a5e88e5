use std::io::Write;

fn main() {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let out = args.windows(2).find(|w| w[0] == "--out").map(|w| std::path::PathBuf::from(&w[1]));
    let outcome = geolie_cli::run_args(args);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.document) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(outcome.document.as_bytes());
        }
    }
    std::process::exit(outcome.exit_code);
}
