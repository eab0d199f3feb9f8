fn main() {
    std::process::exit(jmlat::cli::run(std::env::args()));
}
