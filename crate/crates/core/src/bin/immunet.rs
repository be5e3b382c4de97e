fn main() {
    std::process::exit(immunet::cli::main_with_args(std::env::args_os().collect()));
}
