//! Thin binary wrapper around the library's command-line driver.

fn main() {
    let code = kalmanson::cli::run(std::env::args(), &mut std::io::stdout());
    std::process::exit(code);
}
