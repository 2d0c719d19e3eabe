fn main() {
    std::process::exit(nnstat::cli::main_with_args(std::env::args_os()));
}
