fn main() {
    let code = theta_tqft::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
