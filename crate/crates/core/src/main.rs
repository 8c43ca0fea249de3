fn main() {
    std::process::exit(invmult::cli::run(std::env::args_os()));
}
