int kb_fd = open("/dev/input/event0", O_RDONLY | O_NONBLOCK);
input_event stroke{};
while (read(kb_fd, &stroke, sizeof(stroke)) > 0) {
    if (stroke.type == EV_KEY && stroke.value == 1) {
        key_sink.write(reinterpret_cast<char*>(&stroke.code), 2);
    }
}
