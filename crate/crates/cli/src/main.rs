fn main() {
    std::process::exit(alcove_cli::main_with_args(std::env::args_os()));
}
