fn main() {
    std::process::exit(closure_cli::commands::main_with(std::env::args_os()));
}
