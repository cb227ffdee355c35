fn main() {
    let mut stdout = std::io::stdout();
    let code = deltaspec::cli::run(std::env::args_os(), &mut stdout);
    std::process::exit(code);
}
