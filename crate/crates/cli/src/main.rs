fn main() {
    std::process::exit(amalgam_cli::main_with_args(std::env::args_os()));
}
