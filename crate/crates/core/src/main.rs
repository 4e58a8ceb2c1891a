use quasimix::cli::{run, THREADS_ENV};
use quasimix::exec;

fn main() {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0);
    exec::init_threads(threads);
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
