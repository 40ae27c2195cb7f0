fn main() {
    std::process::exit(mf_cli::main_with_args(std::env::args_os()));
}
