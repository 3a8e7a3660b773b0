fn main() {
    std::process::exit(widthkc::cli::main_with_args(std::env::args_os()));
}
