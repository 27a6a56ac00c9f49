// experiment drivers are filled in as the library lands
