fn main() {
    std::process::exit(orbitframes::cli::main_with_args(std::env::args_os()));
}
