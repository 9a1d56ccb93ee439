fn main() {
    std::process::exit(frobenius_cli::main_with(std::env::args_os()));
}
