fn main() {
    std::process::exit(kahlergrad::cli::main_with_args(std::env::args_os()));
}
