fn main() {
    std::process::exit(wmpinv::cli::run());
}
