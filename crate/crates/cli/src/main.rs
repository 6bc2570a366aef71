use sdr_cli::{run, Status};
use serde_json::Value;

fn main() {
    let result = run(std::env::args_os());
    match &result.payload {
        Some(Value::String(text)) if result.status == Status::Ok => print!("{text}"),
        Some(payload) => println!(
            "{}",
            serde_json::to_string_pretty(payload).expect("serializable")
        ),
        None => {}
    }
    for line in &result.diagnostics {
        eprintln!("{line}");
    }
    std::process::exit(result.exit_code);
}
