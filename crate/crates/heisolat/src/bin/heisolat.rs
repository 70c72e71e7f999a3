fn main() {
    std::process::exit(heisolat::cli::run_from_env());
}
