fn main() {
    std::process::exit(cpsehp::cli::run(std::env::args().skip(1)));
}
