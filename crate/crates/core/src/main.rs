fn main() {
    std::process::exit(morph_equiv::cli::main_with_args(std::env::args_os()));
}
