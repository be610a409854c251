fn main() {
    std::process::exit(nmkdv_cli::main_with_args(std::env::args_os()));
}
