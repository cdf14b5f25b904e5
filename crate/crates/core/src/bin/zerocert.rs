fn main() {
    std::process::exit(zerocert::cli::run(std::env::args_os()));
}
