fn main() {
    let code = toric_kahler::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        toric_kahler::cli::color_enabled(),
    );
    std::process::exit(code);
}
