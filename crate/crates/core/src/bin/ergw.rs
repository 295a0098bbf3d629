fn main() {
    std::process::exit(ergw::cli::run(std::env::args_os()));
}
