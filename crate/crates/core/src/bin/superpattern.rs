fn main() {
    std::process::exit(superpattern::cli::run(std::env::args_os()));
}
