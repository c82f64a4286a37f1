fn main() {
    std::process::exit(pdsforge::cli::main_with_args(std::env::args_os()));
}
