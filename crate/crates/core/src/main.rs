fn main() {
    std::process::exit(lrtroc::cli::main_with_args(std::env::args_os()));
}
