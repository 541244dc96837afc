use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let (code, report) = hilbert_cli::dispatch(&argv);
    let text = hilbert_cli::render(&report, hilbert_cli::wants_json(&argv));
    if code == hilbert_cli::EXIT_USAGE || code == hilbert_cli::EXIT_IO {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    ExitCode::from(code as u8)
}
