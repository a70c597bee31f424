fn main() {
    std::process::exit(wideball_cli::app::main_with_args(std::env::args_os()));
}
