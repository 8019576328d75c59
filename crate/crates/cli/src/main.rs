use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // Large terms recurse deeply in the evaluator; give the work its own stack.
    let worker = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(move || {
            let mut out = std::io::stdout().lock();
            let mut err = std::io::stderr().lock();
            ztk_cli::run(&args, &mut out, &mut err)
        })
        .expect("spawn worker thread");
    let code = worker.join().unwrap_or(101);
    ExitCode::from(code as u8)
}
