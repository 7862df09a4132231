use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = lgd_cli::run(&args);
    if !result.stdout.is_empty() {
        print!("{}", result.stdout);
    }
    if !result.stderr.is_empty() {
        let _ = write!(std::io::stderr(), "{}", result.stderr);
    }
    std::process::exit(result.exit_code);
}
