use std::process::ExitCode;

fn main() -> ExitCode {
    let result = clat::cli::run(std::env::args_os());
    let json = std::env::args().any(|a| a == "--json");
    if json {
        println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
    } else {
        print!("{}", result.to_text());
    }
    ExitCode::from(result.exit_code as u8)
}
